import json
import random

import pytest

from fstrand import cli
from fstrand.generators import random_word
from fstrand.plmap import X0, X1, PLMap, compose, identity, invert

SEED = 818181


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_parse_word_identity():
    assert cli.parse_element("x0 x0^-1").map == identity(1)
    assert cli.parse_element("x0^2").map == compose(X0, X0)
    assert cli.parse_element("x1^-1 x1 x0").map == X0


def test_parse_tree_pair():
    e = cli.parse_element("(*(**)) | ((**)*)")
    assert e.map == X0
    assert cli.parse_element("(**) | (**)").map == identity(1)


def test_parse_json():
    text = json.dumps(X1.to_json_dict())
    assert cli.parse_element(text).map == X1


def test_parse_errors():
    with pytest.raises(cli.ParseError):
        cli.parse_element("x2")
    with pytest.raises(cli.ParseError):
        cli.parse_element("(**)|(*(**))")
    with pytest.raises(cli.ParseError):
        cli.parse_element('{"domain": 1}')
    with pytest.raises(cli.ParseError):
        cli.parse_element('{"domain": 1, "range": 1, "breakpoints": [["0/1","0/1"],["1/3","1/2"],["1/1","1/1"]]}')


def test_reduce_command(capsys):
    code, out, _ = run(capsys, "reduce", "x0 x0^-1")
    assert code == 0
    assert "src0 -> snk0" in out


def test_mul_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "mul", "x0", "x1")
    assert code == 0
    f = cli.parse_element(out).map
    assert f == compose(X1, X0)  # x0 acts after x1


def test_mul_random_round_trips(capsys):
    rng = random.Random(SEED)
    for _ in range(10):
        w = random_word(rng, 4, min_len=1)
        text = " ".join(f"x{g}" + ("^-1" if e < 0 else "") for g, e in w)
        code, out, _ = run(capsys, "--format", "json", "mul", text, "x0 x0^-1")
        assert code == 0
        assert cli.parse_element(out).map == cli.parse_element(text).map


def test_inv_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "inv", "x0")
    assert code == 0
    assert cli.parse_element(out).map == invert(X0)


def test_conj_command(capsys):
    code, out, _ = run(capsys, "conj", "x1 x0 x1^-1", "x0")
    assert code == 0
    assert out.splitlines()[0] == "conjugate"
    code, out, _ = run(capsys, "conj", "x0", "x1")
    assert code == 0
    assert out.splitlines()[0] == "not-conjugate"


def test_conj_scripted_random_pairs(capsys):
    rng = random.Random(SEED + 1)
    for _ in range(5):
        w = random_word(rng, 3, min_len=1)
        g = random_word(rng, 3, min_len=1)
        wt = " ".join(f"x{a}" + ("^-1" if e < 0 else "") for a, e in w)
        gt = " ".join(f"x{a}" + ("^-1" if e < 0 else "") for a, e in g)
        gi = " ".join(
            f"x{a}" + ("^-1" if e > 0 else "") for a, e in reversed(g)
        )
        code, out, _ = run(capsys, "conj", f"{gt} {wt} {gi}", wt)
        assert code == 0 and out.splitlines()[0] == "conjugate"


def test_fixed_command(capsys):
    code, out, _ = run(capsys, "fixed", "x1")
    assert code == 0
    assert "agree" in out
    assert "interval [0/1, 1/2]" in out
    code, out, _ = run(capsys, "--format", "json", "fixed", "x0")
    data = json.loads(out)
    assert data["flag"] == "agree"
    assert data["analytic"] == data["from_loops"]


def test_mather_commands(capsys):
    code, out, _ = run(capsys, "--format", "json", "mather", "x0^-1")
    assert code == 0
    data = json.loads(out)
    assert (data["m"], data["n"]) == (1, 1)
    code, out, _ = run(capsys, "mather-eq", "x0^-1", "x1 x0^-1 x1^-1")
    assert code == 0 and out == "equivalent"
    code, out, _ = run(capsys, "mather-eq", "x0^-1", "x0^-2")
    assert code == 0 and out == "not-equivalent"


def test_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", ".10(01)", ".(01)")
    assert code == 0 and out == "same-orbit"
    code, out, _ = run(capsys, "orbit", ".(01)", ".(0011)")
    assert code == 0 and out == "different-orbit"


def test_transport_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "transport", ".(01)", "--", ".10(01)")
    assert code == 0
    g = cli.parse_element(out).map
    from fractions import Fraction as F

    assert g(F(1, 3)) == F(7, 12)
    code, out, _ = run(
        capsys, "--format", "json", "transport", ".01(0)", ".10(1)", "--", ".1(0)", ".111(0)"
    )
    assert code == 0
    g = cli.parse_element(out).map
    assert g(F(1, 4)) == F(1, 2) and g(F(3, 4)) == F(7, 8)


def test_render_command(capsys):
    code, out, _ = run(capsys, "render", "x0")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "render", "x0", "--annular")
    assert code == 0 and "twopi" in out


def test_exit_codes(capsys):
    code, _, err = run(capsys, "reduce", "bogus")
    assert code == 2 and "parse error" in err
    code, _, err = run(capsys, "mather", "x0")
    assert code == 1 and "one-bump" in err
    code, _, err = run(capsys, "transport", ".(01)", ".(01)")
    assert code == 2  # missing separator
