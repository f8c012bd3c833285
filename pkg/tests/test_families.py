import pytest

from expanderlab import (
    GeneratorNotUnitError,
    ProgressionCollisionError,
    SizeExceedsFieldError,
    SpecSyntaxError,
    generate,
    make_field,
    parse_family,
)

F101 = make_field(101)
F7 = make_field(7)


def test_interval_family():
    spec = parse_family("interval:0")
    assert generate(spec, F101, 5).elements == (0, 1, 2, 3, 4)


def test_gp_family():
    spec = parse_family("gp:2")
    assert generate(spec, F7, 3).elements == (1, 2, 4)


def test_ap_zero_step_rejected():
    with pytest.raises(ProgressionCollisionError):
        generate(parse_family("ap:0,0"), F101, 4)


def test_ap_step_multiple_of_p_rejected():
    with pytest.raises(ProgressionCollisionError):
        generate(parse_family("ap:3,202"), F101, 4)


def test_gp_generator_must_be_unit():
    with pytest.raises(GeneratorNotUnitError):
        generate(parse_family("gp:707"), F101, 3)


def test_gp_collision_detected():
    # 2 has multiplicative order 3 mod 7
    with pytest.raises(ProgressionCollisionError):
        generate(parse_family("gp:2"), F7, 4)


def test_size_exceeds_field():
    with pytest.raises(SizeExceedsFieldError):
        generate(parse_family("interval:0"), F7, 8)


def test_random_family_deterministic_exact_size():
    spec = parse_family("rand", seed=99)
    a = generate(spec, F101, 17)
    b = generate(parse_family("rand", seed=99), F101, 17)
    assert a == b and len(a) == 17
    c = generate(parse_family("rand", seed=100), F101, 17)
    assert c != a  # different seed, different draw


def test_union_family():
    spec = parse_family("union:interval:0|interval:50")
    got = generate(spec, F101, 9)
    assert got.elements == (0, 1, 2, 3, 4, 50, 51, 52, 53)


def test_union_overlap_rejected():
    spec = parse_family("union:interval:0|interval:1")
    with pytest.raises(ProgressionCollisionError):
        generate(spec, F101, 8)


def test_union_mixes_sub_seeds():
    fld = make_field(10007)
    a = generate(parse_family("union:rand|rand", seed=5), fld, 12)
    assert len(a) == 12
    b = generate(parse_family("union:rand|rand", seed=5), fld, 12)
    assert a == b


def test_descriptor_roundtrip():
    for desc in ("interval:3", "ap:1,5", "gp:3", "rand", "union:interval:0|ap:50,7"):
        assert parse_family(desc).describe() == desc


@pytest.mark.parametrize("bad", ["interval", "ap:1", "gp:1,2", "rand:5", "union:interval:0", "blob:1"])
def test_bad_descriptors(bad):
    with pytest.raises(SpecSyntaxError):
        parse_family(bad)


def test_same_spec_same_set():
    spec = parse_family("ap:4,9", seed=1)
    assert generate(spec, F101, 10) == generate(spec, F101, 10)
