from drxsim.utils import human_readable_bits


def test_human_readable_bits():
    assert human_readable_bits(0) == "0 bit"
    assert human_readable_bits(999) == "999.00 bit"
    assert human_readable_bits(2_000_000) == "2.00 Mbit"
    assert human_readable_bits(50_000_000_000) == "50.00 Gbit"
    assert human_readable_bits("many") == "Invalid size"
