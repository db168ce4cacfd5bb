from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelfactors.cache import (
    CACHE_ENV,
    FORMAT,
    CacheFile,
    CacheFormatError,
    CacheSection,
    MissingCache,
    build_cache,
    cache_dir,
    cache_path,
    find_cache,
)
from siegelfactors.cli import EXIT_FAIL, EXIT_MISSING, EXIT_OK, EXIT_USAGE, main
from siegelfactors.siegel.forms import reduced_forms
from siegelfactors.verify import run_suite


# -- cache files ----------------------------------------------------------------------

values = st.fractions(-10 ** 6, 10 ** 6, max_denominator=50)


@st.composite
def cache_files(draw):
    bound = draw(st.integers(0, 12))
    keys = reduced_forms(bound)
    sections = []
    for name in draw(st.lists(st.sampled_from(["ring", "cusp", "extra"]), unique=True, max_size=3)):
        forms = [f"G{i}" for i in range(draw(st.integers(0, 3)))]
        records = [(key, tuple(draw(values) for _ in forms)) for key in keys]
        sections.append((name, forms, records))
    header = {"format": FORMAT, "weight": str(draw(st.sampled_from([4, 10, 20]))), "recipe": "test",
              "det_bound": str(bound), "lambda_p2": "test"}
    return CacheFile(header, [CacheSection(*s) for s in sections])


@settings(max_examples=40, deadline=None)
@given(cache_files())
def test_round_trip_is_byte_exact(cache):
    text = cache.serialize()
    again = CacheFile.parse(text)
    assert again.serialize() == text
    assert again == cache


def test_real_cache_round_trip(tmp_path):
    cache = build_cache(10, 12)
    path = cache.write(tmp_path / "c.cache")
    data = path.read_bytes()
    assert CacheFile.read(path).serialize().encode() == data
    stamp = path.stat().st_mtime_ns
    cache.write(path)  # unchanged content is not rewritten
    assert path.stat().st_mtime_ns == stamp and path.read_bytes() == data
    (chi,) = CacheFile.read(path).expansions("cusp")
    assert chi[(1, 1, 1)] == 1 and chi[(1, 0, 1)] == -2


@pytest.mark.parametrize("text", [
    pytest.param("format = siegelfactors-expansion 1\n", id="header"),
    pytest.param("format = other 9\nweight = 4\nrecipe = r\ndet_bound = 1\nlambda_p2 = l\n", id="format"),
    pytest.param("format = siegelfactors-expansion 1\nweight = 4\nrecipe = r\ndet_bound = 1\nlambda_p2 = l\nsection = ring", id="newline"),
    pytest.param("format = siegelfactors-expansion 1\nweight = 4\nrecipe = r\ndet_bound = 1\nlambda_p2 = l\n"
     "section = ring\nforms = E4\n1 1 1 : 2\n0 0 0 : 1\n", id="sorted"),
    pytest.param("format = siegelfactors-expansion 1\nweight = 4\nrecipe = r\ndet_bound = 1\nlambda_p2 = l\n"
     "section = ring\nforms = E4\n0 0 0 : 1 2\n", id="malformed"),
])
def test_malformed_files_are_rejected(text):
    with pytest.raises(CacheFormatError):
        CacheFile.parse(text)


def test_cache_directory_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert cache_dir() == tmp_path
    assert cache_path(10, Fraction(61, 2)).name == "weight10_det61-2.cache"
    with pytest.raises(MissingCache):
        find_cache(10)
    build_cache(4, 4).write(cache_path(4, 4))
    build_cache(4, 6).write(cache_path(4, 6))
    assert find_cache(4).det_bound == 6
    assert find_cache(4, 5).det_bound == 6
    with pytest.raises(MissingCache):
        find_cache(4, 7)


# -- command line ------------------------------------------------------------------------

def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_weight_four(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", tmp_path, "expand", "--weight", 4, "--det-bound", 8)
    assert code == EXIT_OK
    assert "ring basis (1): E4" in out and "cusp basis (0):" in out
    assert find_cache(4, 8, tmp_path).section("cusp").forms == []


def test_expand_weight_ten(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", tmp_path, "expand", "--weight", 10, "--det-bound", 40)
    assert code == EXIT_OK and "cusp basis (1):" in out
    assert (tmp_path / "weight10_det40.cache").exists()


def test_expand_rejects_odd_weight(capsys, tmp_path):
    code, _, err = run(capsys, "--cache-dir", tmp_path, "expand", "--weight", 7, "--det-bound", 4)
    assert code == EXIT_USAGE and "error" in err


def test_usage_errors_exit_with_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["hecke", "--weight", "10", "--p", "11"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "x-arch", "--primes", "2,13"])
    assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_missing_cache_exits_with_three(capsys, tmp_path):
    code, _, err = run(capsys, "--cache-dir", tmp_path, "hecke", "--weight", 10)
    assert code == EXIT_MISSING and "no weight-10 cache" in err
    code, _, err = run(capsys, "--cache-dir", tmp_path, "verify", "--suite", "ramanujan")
    assert code == EXIT_MISSING


def test_unknown_form_exits_with_three(capsys, cache_directory):
    code, _, err = run(capsys, "--cache-dir", cache_directory, "lfactor", "--form", "F10_7")
    assert code == EXIT_MISSING and "unknown form" in err
    code, _, _ = run(capsys, "--cache-dir", cache_directory, "lfactor", "--form", "bogus")
    assert code == EXIT_MISSING


def test_hecke_matrix_command(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "hecke", "--weight", 10, "--p", 2)
    assert code == EXIT_OK and "[240]" in out
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "hecke", "--weight", 4)
    assert code == EXIT_OK and "cusp space is zero" in out


def test_eigen_and_classify_commands(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "eigen", "--weight", 10)
    assert code == EXIT_OK and "lambda(2) = 240" in out and "lambda(9) = 293343849" in out
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "classify", "--weight", 20)
    assert code == EXIT_OK
    assert sorted(line.split(": ")[1] for line in out.splitlines()) == ["SK", "nonSK"]


def test_standard_factor_of_the_non_lift(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "classify", "--weight", 20)
    (label,) = [line.split(":")[0] for line in out.splitlines() if line.endswith("nonSK")]
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "lfactor", "--form", label, "--rep", 5)
    assert code == EXIT_OK and "degree 5" in out
    roots = out.split("reciprocal roots: ")[1]
    assert any(r.strip() in ("1.0", "(1.0 + 0.0j)") for r in roots.split(", "))


def test_satake_command(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "satake", "--weight", 10, "--p", 2)
    assert code == EXIT_OK and "1.4142135623730950488" in out
    assert "0.7071067811865475244," in out  # the inverse root keeps the requested precision
    with pytest.raises(SystemExit):
        main(["satake"])
    capsys.readouterr()


def test_bessel_scan_command(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "bessel-scan", "--weight", 10, "--d-max", 20)
    assert code == EXIT_OK and "[3, 4, 7, 8, 11, 15, 19, 20]" in out


def test_eval_command(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "eval", "--spec", "zeta", "--s", 2, "--terms", 100)
    assert code == EXIT_OK and out.startswith("zeta at s=2")
    code, _, err = run(capsys, "eval", "--spec", "zeta", "--s", 1, "--terms", 100)
    assert code == EXIT_USAGE and "absolute convergence" in err


def test_verify_exit_codes(capsys, cache_directory):
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "verify", "--suite", "x-arch")
    assert code == EXIT_OK and out.splitlines()[-1] == "total pass=9 fail=0 flagged=0"
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "verify", "--suite", "x-nonarch")
    assert code == EXIT_OK and "flagged=6" in out


def test_failing_case_exits_with_one(capsys, cache_directory, monkeypatch):
    from siegelfactors import verify
    monkeypatch.setitem(verify.SUITES, "x-arch", lambda options: [("forced", lambda: ("fail", "witness"))])
    code, out, _ = run(capsys, "--cache-dir", cache_directory, "verify", "--suite", "x-arch")
    assert code == EXIT_FAIL and "fail forced :: witness" in out


@pytest.mark.parametrize("suite", ["rho-relations", "x-nonarch", "sk-factorization"])
def test_reports_do_not_depend_on_the_worker_count(cache_directory, suite):
    options = {"cache_dir": cache_directory}
    serial = run_suite(suite, options, workers=1).serialize()
    parallel = run_suite(suite, options, workers=4).serialize()
    assert serial == parallel
    assert "fail=0" in serial
