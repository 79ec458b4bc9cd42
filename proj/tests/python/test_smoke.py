import pathlib

import pytest

import mqcplus

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"

MP = "fun e => fun a => # (e (a (fun b => shift k => b)))"
DNS = "fun a => fun b => # (b (gen x => shift k => a @ x k))"


def test_demo_escape():
    r = mqcplus.demo("1 + #(2 + shift k => 4)")
    assert r["value"] == "5"
    assert r["trace"][1][2] == "4{(fun a => #(2 + a))/k}"


def test_demo_twice():
    assert mqcplus.demo("1 + #(2 + shift k => k 4 + k 8)")["value"] == "17"


def test_check_mp_and_dns():
    r = mqcplus.check("(T -> S) -> ((S -> T) -> T) -> S", MP)
    assert r["ok"] and r["T"] == "S"
    goal = "(forall x. ((P(x) -> Q(x)) -> T) -> T) -> ((forall x. P(x) -> Q(x)) -> T) -> T"
    assert mqcplus.check(goal, DNS)["ok"]
    assert mqcplus.check(goal, DNS, mode="mqc")["error_kind"] == "ControlInMqc"


def test_check_errors():
    r = mqcplus.check("P(c)", "shift k => k c")
    assert not r["ok"] and r["error_kind"] == "ShiftOutsideDelimiter"
    assert mqcplus.check("P", "a")["error_kind"] == "UnboundHypothesis"
    assert mqcplus.check("P", "a", hyps={"a": "P"})["ok"]


def test_check_corpus_files():
    for path in sorted(CORPUS.glob("*.mqc")):
        mode = "mqc" if path.name.startswith("mqc_") else "mqcplus"
        for r in mqcplus.check_file(str(path), mode):
            assert r["ok"], (path.name, r)


def test_check_source_reports_location():
    reports = mqcplus.check_source("pred P/0.\nthm bad : P := a.\n")
    assert reports[0]["error_kind"] == "UnboundHypothesis"
    assert reports[0]["line"] == 2


def test_parse_errors():
    with pytest.raises(mqcplus.ParseError):
        mqcplus.parse_proof("fun a => (a")
    with pytest.raises(ValueError):
        mqcplus.parse_formula("P(x")


def test_round_trip():
    assert mqcplus.parse_formula("A -> (B -> C)") == "A -> B -> C"
    assert mqcplus.parse_proof(MP) == MP


def test_normalize():
    r = mqcplus.normalize("# fst (shift k => k (v1, v2))", trace=True)
    assert r["value"] == "v1"
    assert r["trace"][1][1] == "capture"
    with pytest.raises(mqcplus.ReductionError):
        mqcplus.normalize("f (shift k => k a)")


def test_cps_is_control_free():
    q = mqcplus.cps(MP, T="S")
    assert "shift" not in q and "#" not in q
    goal = mqcplus.translate_super("(T -> S) -> ((S -> T) -> T) -> S", "S")
    assert mqcplus.check(goal, q, mode="mqc")["ok"]
    with pytest.raises(mqcplus.TranslationError):
        mqcplus.cps("# a")


def test_translations():
    assert mqcplus.translate_sub("P -> Q", "R") == "P -> (Q -> R) -> R"
    assert mqcplus.translate_sub("exists x. P(x) /\\ Q(x)", "R") == "exists x. P(x) /\\ Q(x)"
    assert mqcplus.is_sigma("exists x. P(x)")
    assert not mqcplus.is_sigma("forall x. P(x)")


def test_dns_iso():
    r = mqcplus.dns_iso("forall x. P(x) -> Q(x)", "R")
    assert r["to_checks"] and r["from_checks"]
    assert len(r["axioms"]) >= 2
    atom = mqcplus.dns_iso("P(x)", "R")
    assert atom["to"] == atom["from"] == "fun c => c"
    assert atom["axioms"] == []


def test_suites():
    assert "subject-reduction" in mqcplus.suite_names()
    for name in mqcplus.suite_names():
        r = mqcplus.run_suite(name, cases=10, seed=3)
        assert r["passed"] == 10 and r["failed"] == 0, r
    with pytest.raises(ValueError):
        mqcplus.run_suite("nonsense", 1, 0)
