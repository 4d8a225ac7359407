import pytest

from rightsizer import Catalog, InstanceType, dump_catalog, load_catalog
from rightsizer.errors import (
    DuplicateKeyError,
    MalformedRowError,
    NonPositiveCapacityError,
    NotFoundError,
)

VALID = b"""key,cpu_ecu,mem_gib,cost_per_hour
rhel.m4.large.us-east,6.5,8,0.205
win.t2.small.us-east,1,2,0.036
lin.r4.xlarge.us-west,13.5,30.5,0.266
"""


def test_load_preserves_row_order():
    catalog = load_catalog(VALID)
    assert len(catalog) == 3
    assert [e.key for e in catalog.entries] == [
        "rhel.m4.large.us-east",
        "win.t2.small.us-east",
        "lin.r4.xlarge.us-west",
    ]
    assert catalog.entries[0].cpu_capacity == 6.5
    assert catalog.entries[2].mem_capacity == 30.5


def test_zero_cost_rejected():
    data = b"key,cpu_ecu,mem_gib,cost_per_hour\nwin.t2.small.us-east,1,2,0\n"
    with pytest.raises(NonPositiveCapacityError) as exc:
        load_catalog(data)
    assert "line 2" in str(exc.value)


@pytest.mark.parametrize("bad", ["-1,2,0.1", "1,-2,0.1", "0,2,0.1"])
def test_nonpositive_capacities_rejected(bad):
    data = f"key,cpu_ecu,mem_gib,cost_per_hour\nwin.t2.small.us-east,{bad}\n".encode()
    with pytest.raises(NonPositiveCapacityError):
        load_catalog(data)


def test_duplicate_key_rejected():
    data = (b"key,cpu_ecu,mem_gib,cost_per_hour\n"
            b"win.t2.small.us-east,1,2,0.036\n"
            b"win.t2.small.us-east,1,2,0.040\n")
    with pytest.raises(DuplicateKeyError) as exc:
        load_catalog(data)
    assert "line 3" in str(exc.value)


def test_bad_column_count_names_line():
    data = b"key,cpu_ecu,mem_gib,cost_per_hour\nwin.t2.small.us-east,1,2\n"
    with pytest.raises(MalformedRowError) as exc:
        load_catalog(data)
    assert "line 2" in str(exc.value)


def test_non_numeric_field_rejected():
    data = b"key,cpu_ecu,mem_gib,cost_per_hour\nwin.t2.small.us-east,one,2,0.036\n"
    with pytest.raises(MalformedRowError):
        load_catalog(data)


@pytest.mark.parametrize("key", ["small", "t2.small", "t2..us-east", ""])
def test_key_needs_three_dotted_segments(key):
    data = f"key,cpu_ecu,mem_gib,cost_per_hour\n{key},1,2,0.036\n".encode()
    with pytest.raises(MalformedRowError):
        load_catalog(data)


def test_wrong_header_rejected():
    with pytest.raises(MalformedRowError) as exc:
        load_catalog(b"key,cpu,mem,cost\nwin.t2.small.us-east,1,2,0.036\n")
    assert "line 1" in str(exc.value)


def test_empty_catalog_rejected():
    with pytest.raises(MalformedRowError):
        load_catalog(b"key,cpu_ecu,mem_gib,cost_per_hour\n")


def test_crlf_accepted():
    data = VALID.replace(b"\n", b"\r\n")
    assert load_catalog(data) == load_catalog(VALID)


def test_lookup_existing():
    catalog = load_catalog(VALID)
    entry = catalog.lookup("win.t2.small.us-east")
    assert entry == InstanceType("win.t2.small.us-east", 1.0, 2.0, 0.036)


def test_lookup_absent():
    catalog = load_catalog(VALID)
    with pytest.raises(NotFoundError):
        catalog.lookup("win.t2.large.us-east")


def test_lookup_is_case_sensitive():
    catalog = load_catalog(VALID)
    with pytest.raises(NotFoundError):
        catalog.lookup("Win.t2.small.us-east")


def test_round_trip_stability():
    catalog = load_catalog(VALID)
    again = load_catalog(dump_catalog(catalog))
    assert again == catalog
    assert dump_catalog(again) == dump_catalog(catalog)


def test_constructor_invariants():
    with pytest.raises(ValueError):
        Catalog(())
    entry = InstanceType("a.b.c", 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        Catalog((entry, entry))
