import pytest

from dotcav.config import REQUIRED, ConfigError, parse_config, resolve_section
from dotcav.units import DEBYE


def test_sections_and_comments():
    raw = parse_config(
        "# leading comment\n"
        "[scenario]\n"
        "command = indist   # trailing comment\n"
        "\n"
        "[indist]\n"
        "gamma = 7.0711\n"
    )
    assert raw.section("scenario")["command"][0] == "indist"
    assert raw.section("indist")["gamma"] == ("7.0711", 6)


def test_unit_suffixes():
    raw = parse_config("[s]\na = 650 ps\nb = 13ns\nc = 929 nm\nd = 20.8 D\ne = 1e-3\n")
    schema = {k: ("float", REQUIRED) for k in "abcde"}
    vals = resolve_section(raw, "s", schema)
    assert vals["a"] == pytest.approx(0.65)       # ps -> ns
    assert vals["b"] == 13.0
    assert vals["c"] == 929.0
    assert vals["d"] == pytest.approx(20.8 * DEBYE)
    assert vals["e"] == 1e-3


def test_bool_and_string_values():
    raw = parse_config('[s]\nflag = true\noff = false\nname = eq3\nquoted = "a b"\n')
    vals = resolve_section(raw, "s", {
        "flag": ("bool", False), "off": ("bool", True),
        "name": ("str", ""), "quoted": ("str", ""),
    })
    assert vals == {"flag": True, "off": False, "name": "eq3", "quoted": "a b"}


def test_unknown_key_reports_line_number():
    raw = parse_config("[s]\nx = 1\ntypo = 2\n")
    with pytest.raises(ConfigError, match="line 3"):
        resolve_section(raw, "s", {"x": ("float", REQUIRED)})


def test_missing_required_key():
    raw = parse_config("[s]\n")
    with pytest.raises(ConfigError, match="missing required key"):
        resolve_section(raw, "s", {"x": ("float", REQUIRED)})


def test_malformed_lines():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("key = value\n")  # before any section
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("[s]\njust some words\n")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("[s]\n[unterminated\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config("[s]\na = 1\na = 2\n")


def test_type_errors():
    raw = parse_config("[s]\nx = abc\nn = 1.5\nun = 3 ns\nb = maybe\n")
    with pytest.raises(ConfigError, match="expected a number"):
        resolve_section(raw, "s", {"x": ("float", 0.0), "n": ("float", 0.0),
                                   "un": ("float", 0.0), "b": ("bool", False)})
    with pytest.raises(ConfigError, match="expected an integer"):
        resolve_section(raw, "s", {"x": ("str", ""), "n": ("int", 0),
                                   "un": ("float", 0.0), "b": ("bool", False)})
    with pytest.raises(ConfigError, match="unit suffix not allowed"):
        resolve_section(raw, "s", {"x": ("str", ""), "n": ("float", 0.0),
                                   "un": ("int", 0), "b": ("bool", False)})
    with pytest.raises(ConfigError, match="expected a boolean"):
        resolve_section(raw, "s", {"x": ("str", ""), "n": ("float", 0.0),
                                   "un": ("float", 0.0), "b": ("bool", False)})


def test_defaults_fill_in():
    raw = parse_config("[s]\n")
    vals = resolve_section(raw, "s", {"x": ("float", 3.5), "y": ("path", None)})
    assert vals == {"x": 3.5, "y": None}
