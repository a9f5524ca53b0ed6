"""Acceptance gate: twelve standalone criteria, one pass/fail line each.

Each test computes its whole verdict first, prints its line outside the
capture (so it shows live even under plain `pytest -v`), then asserts.
A failing criterion therefore still reports itself, and the assertion
message repeats the line.
"""

import io
import contextlib
import random
import time
from pathlib import Path

import pytest

from superstrict.catalog import CATALOG_BY_NAME, two_point_frame
from superstrict.cli import main
from superstrict.proof import DerivationError, SystemId, check, parse_script, soundness_spotcheck
from superstrict.search import (
    definability_probe,
    enumerate_frames,
    find_countermodel,
    rule_preservation_probe,
    valid_up_to,
)
from superstrict.semantics import (
    NAMED_CLASSES,
    Frame,
    Model,
    holds,
    model_to_json,
    valid_on_frame,
)
from superstrict.syntax import (
    And,
    Bot,
    Box,
    Dia,
    Imp,
    Or,
    Ssi,
    Sssi,
    Strict,
    Var,
    desugar,
    parse,
    weight,
)

from oracles import normal_eval_json

DATA = Path(__file__).parent / "data"
S2_0 = NAMED_CLASSES["s2_0"]
S2 = NAMED_CLASSES["s2"]
S3 = NAMED_CLASSES["s3"]


@pytest.fixture
def report(capsys):
    def _report(num: int, name: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" ({detail})"
        with capsys.disabled():
            print(line)
        assert ok, line

    return _report


def test_criterion_01_paradox_countermodels(report):
    formulas = [
        "~p |> (p |> q)",
        "q |> (p |> q)",
        "p |> top",
        "p |> p",
        "(p |> q) -> (~q |> ~p)",
    ]
    start = time.monotonic()
    ok = True
    for text in formulas:
        f = parse(text)
        witness = find_countermodel(f, S2, 3)
        ok = ok and witness is not None and not holds(witness.model, witness.world, f)
    elapsed = time.monotonic() - start
    report(1, "paradox refutation over reflexive frames", ok and elapsed < 10.0,
            f"5 witnesses, {elapsed:.2f} s")


def test_criterion_02_connexive_theses_exhaustive(report):
    theses = ["~(p |> ~p)", "~(~p |> p)", "(p |> q) -> ~(p |> ~q)", "(p |> ~q) -> ~(p |> q)"]
    start = time.monotonic()
    frame_count = sum(1 for _ in enumerate_frames(3, S2_0))
    ok = frame_count == 2 ** (3 * 3 + 3)
    for text in theses:
        ok = ok and find_countermodel(parse(text), S2_0, 3) is None
    elapsed = time.monotonic() - start
    report(2, "connexive theses unrefuted up to n=3", ok and elapsed < 60.0,
            f"{frame_count} frames at n=3, {elapsed:.2f} s")


def test_criterion_03_negated_paradox_and_strong_thesis(report):
    valid_part = valid_up_to(parse("~(bot |> q)"), S2_0, 3)
    witness = find_countermodel(parse("(p |> q) |> ~(p |> ~q)"), S2_0, 3)
    ok = valid_part and witness is not None
    report(3, "negated paradox valid, strong connexive thesis refuted", ok,
            f"strong-thesis countermodel at n={witness.frame_size if witness else '?'}")


def test_criterion_04_two_point_separation(report):
    frame = two_point_frame()
    box_top = parse("box top")
    box_box_top = parse("box box top")
    sep = valid_on_frame(frame, box_top) and not valid_on_frame(frame, box_box_top)
    witness = find_countermodel(box_box_top, S2_0, 2)
    ok = sep and witness is not None
    report(4, "iterated necessity separates on the two-point frame", ok,
            f"search witness at n={witness.frame_size if witness else '?'}")


def test_criterion_05_guarded_axiom_family(report):
    unguarded = [f"lewis_ax{i}_ssi" for i in range(1, 8)]
    guarded = [f"guarded_ax{i}" for i in range(1, 8)]
    refuted_ok = all(
        find_countermodel(CATALOG_BY_NAME[name].formula, S2, 2) is not None
        for name in unguarded
    )
    guarded_ok = all(
        valid_up_to(CATALOG_BY_NAME[name].formula, S2, 3) for name in guarded
    )
    s3_variant_ok = valid_up_to(CATALOG_BY_NAME["guarded_s3_ax"].formula, S3, 3)
    ok = refuted_ok and guarded_ok and s3_variant_ok
    detail = "7 refuted unguarded, 7 guarded valid, guarded preorder variant valid"
    if not s3_variant_ok:
        detail = (
            "the possibility-guarded preorder axiom is NOT valid over preorders: "
            "a one-world reflexive model where p and q both hold refutes it, since "
            "~dia q is then impossible and the inner arrow needs a possible "
            "antecedent; see catalog entry guarded_s3_ax"
        )
    report(5, "guarding recovers the axiom stock", ok, detail)


def test_criterion_06_transitivity_and_reflexivity_guards(report):
    ok = valid_up_to(parse("((p |> q) & (q |> r)) -> (p |> r)"), S2_0, 3)
    ok = ok and valid_up_to(parse("dia p -> (p |> p)"), S2, 3)
    witness = find_countermodel(parse("~dia p -> (p |> p)"), S2, 1)
    ok = ok and witness is not None and witness.frame_size == 1
    report(6, "transitivity and guarded reflexivity", ok)


def test_criterion_07_preorder_chain(report):
    f = CATALOG_BY_NAME["s3_chained_transitivity"].formula
    start = time.monotonic()
    ok = valid_up_to(f, S3, 3)
    elapsed = time.monotonic() - start
    report(7, "nested guarded transitivity over preorders", ok and elapsed < 300.0,
            f"{elapsed:.2f} s")


def test_criterion_08_rule_probes(report):
    premises = [parse("p |> q"), parse("p")]
    conclusion = parse("q")
    preserved = rule_preservation_probe(premises, conclusion, S2, 3)
    broken = rule_preservation_probe(premises, conclusion, S2_0, 3)
    ok = preserved is None and broken is not None and broken.n <= 2
    report(8, "detachment preserved over reflexive frames only", ok,
            f"witness frame n={broken.n if broken else '?'}")


def test_criterion_09_definability_probes(report):
    box_box_top = parse("box box top")
    diverging = definability_probe(box_box_top, S2_0, 2)
    exact = definability_probe(parse("p ||> q"), S2_0, 3)
    ok = diverging is not None and exact is None
    if ok:
        model, world = diverging
        ok = holds(model, world, box_box_top) != holds(model, world, desugar(box_box_top))
    report(9, "primitive vs rewritten readings", ok,
            "iterated necessity diverges, strong-arrow expansion exact")


def test_criterion_10_proof_checker_golden_and_spotchecks(report):
    good = parse_script((DATA / "lemmon_box_top.proof").read_text())
    check(SystemId.LEMMON_S2, good)
    bad = parse_script((DATA / "lemmon_nrest_bad.proof").read_text())
    try:
        check(SystemId.LEMMON_S2, bad)
        rejected_at_right_step = False
    except DerivationError as exc:
        rejected_at_right_step = exc.step == 2

    axioms = parse_script(
        "1. (p & q) => (q & p) ; axiom 1\n"
        "2. (p & q) => p ; axiom 2\n"
        "3. p => (p & p) ; axiom 3\n"
        "4. ((p & q) & r) => (p & (q & r)) ; axiom 4\n"
        "5. ((p => q) & (q => r)) => (p => r) ; axiom 5\n"
        "6. (p & (p => q)) => q ; axiom 6\n"
        "7. dia (p & q) => dia p ; axiom 7\n"
    )
    entries = soundness_spotcheck(SystemId.LEWIS_S2, axioms, 3)
    axioms_sound = all(e.valid_up_to_bound for e in entries)

    t_axiom = parse_script("1. box p -> p ; axiom t\n")
    wrong_class = soundness_spotcheck(SystemId.LEMMON_S2, t_axiom, 3, frame_class=S2_0)
    factivity_caught = wrong_class[0].countermodel is not None

    ok = rejected_at_right_step and axioms_sound and factivity_caught
    report(10, "proof checker golden scripts and soundness spot checks", ok,
            "7 axiom steps clean over reflexive frames; factivity caught over the base class")


def _random_formula(rng: random.Random, budget: int, depth: int):
    """Random formula with at most `budget` binary connectives."""
    kinds = ["var", "var", "var", "bot"]
    if depth < 8:
        kinds += ["box", "dia"]
        if budget > 0:
            kinds += ["and", "or", "imp", "ssi", "sssi", "strict"] * 2
    kind = rng.choice(kinds)
    match kind:
        case "var":
            return Var(rng.choice(("p", "q", "r"))), budget
        case "bot":
            return Bot(), budget
        case "box" | "dia":
            sub, rest = _random_formula(rng, budget, depth + 1)
            return (Box if kind == "box" else Dia)(sub), rest
        case _:
            ctor = {"and": And, "or": Or, "imp": Imp,
                    "ssi": Ssi, "sssi": Sssi, "strict": Strict}[kind]
            left, rest = _random_formula(rng, budget - 1, depth + 1)
            right, rest = _random_formula(rng, rest, depth + 1)
            return ctor(left, right), rest


def test_criterion_11_oracle_equivalence(report):
    rng = random.Random(20260815)
    ok = True
    for _ in range(10_000):
        f, _ = _random_formula(rng, 6, 0)
        assert weight(f) <= 6
        n = rng.randint(1, 3)
        full = (1 << n) - 1
        frame = Frame(n, tuple(rng.randint(0, full) for _ in range(n)), full)
        model = Model(frame, {v: rng.randint(0, full) for v in ("p", "q", "r")})
        world = rng.randrange(n)
        if holds(model, world, f) != normal_eval_json(model_to_json(model), world, f):
            ok = False
            break
    report(11, "evaluator agrees with the independent oracle", ok,
            "10000 random triples on fully normal models")


def test_criterion_12_byte_identical_reports(report, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    with contextlib.redirect_stdout(io.StringIO()):
        code1 = main(["suite", "--max-n", "3", "--json", str(first)])
        code2 = main(["suite", "--max-n", "3", "--json", str(second)])
    same = first.read_bytes() == second.read_bytes()
    ok = code1 == 0 and code2 == 0 and same
    report(12, "suite reports are byte identical across runs", ok,
            f"{len(first.read_bytes())} bytes")
