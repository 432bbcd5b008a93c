import numpy as np
import pytest

from twohilb.errors import TangleSyntaxError, TangleTypeError
from twohilb.groups import FiniteSuperGroup, cyclic_group, symmetric_group
from twohilb.linalg import max_dev
from twohilb.reps import RepCategory
from twohilb.tangles import (
    HOPF_PRESENTATIONS,
    KINK_PLUS,
    UNKNOT_PRESENTATIONS,
    EvalContext,
    evaluate,
    evaluate_scalar,
    move_check,
    move_suite,
    parse,
)


@pytest.fixture(scope="module")
def s3_ctx():
    cat = RepCategory(symmetric_group(3))
    return EvalContext.make(cat, cat.irrep("2a"))


@pytest.fixture(scope="module")
def odd_ctx():
    cat = RepCategory(FiniteSuperGroup.make(cyclic_group(2), 1))
    return EvalContext.make(cat, cat.irrep("1b"))


def test_parse_closed_loop():
    expr = parse("coev ; coev*")
    assert expr.src == "" and expr.dst == ""


def test_parse_parallel_identities():
    expr = parse("id+ | id-")
    assert expr.src == "+-" and expr.dst == "+-"


def test_parse_ev_then_coev():
    expr = parse("ev ; coev")
    assert expr.src == "-+" and expr.dst == "+-"


def test_parse_errors_carry_position():
    with pytest.raises(TangleSyntaxError) as err:
        parse("coev ; @")
    assert err.value.position == 7
    with pytest.raises(TangleSyntaxError):
        parse("(coev ; coev*")
    with pytest.raises(TangleTypeError, match="mismatch"):
        parse("ev ; ev")


def test_ast_json_has_types():
    data = parse("(coev | id+) ; (id+ | ev)").to_json()
    assert data["op"] == "seq"
    assert data["src"] == "+" and data["dst"] == "+"
    assert data["parts"][0]["op"] == "par"


def test_closed_loop_value_is_dimension(s3_ctx):
    assert evaluate_scalar("coev ; coev*", s3_ctx) == pytest.approx(2.0)
    assert evaluate_scalar("ev* ; ev", s3_ctx) == pytest.approx(2.0)


def test_twist_tangle_is_balancing(s3_ctx, odd_ctx):
    twist = evaluate(KINK_PLUS, s3_ctx)
    assert max_dev(twist.matrix, np.eye(2)) < 1e-9
    odd_twist = evaluate(KINK_PLUS, odd_ctx)
    assert odd_twist.matrix[0, 0] == pytest.approx(-1.0)


def test_kinked_unknot_value(odd_ctx):
    # one positive kink in ambient 3 multiplies the closed loop by the twist
    kinked = f"ev* ; (id- | ({KINK_PLUS})) ; ev"
    assert evaluate_scalar(kinked, odd_ctx) == pytest.approx(-1.0)


def test_evaluation_is_functorial(s3_ctx, rng):
    pieces = ["(coev | id+)", "(id+ | ev)"]
    whole = evaluate(" ; ".join(pieces), s3_ctx)
    first = evaluate(pieces[0], s3_ctx)
    second = evaluate(pieces[1], s3_ctx)
    assert max_dev(whole.matrix, second.matrix @ first.matrix) < 1e-12
    left = evaluate("coev", s3_ctx)
    right = evaluate("id+", s3_ctx)
    par = evaluate("coev | id+", s3_ctx)
    assert max_dev(par.matrix, np.kron(left.matrix, right.matrix)) < 1e-12


def test_crossings_rejected_in_ambient_two():
    cat = RepCategory(symmetric_group(3))
    ctx = EvalContext.make(cat, cat.irrep("2a"), ambient=2)
    evaluate("coev ; coev*", ctx)  # cups and caps are fine
    with pytest.raises(TangleTypeError, match="ambient"):
        evaluate("b++", ctx)


def test_move_suite_passes_for_catalog_objects(s3_ctx, odd_ctx):
    for ctx in (s3_ctx, odd_ctx):
        for entry in move_suite(ctx):
            assert entry.passed, (entry.move_id, entry.deviation)


def test_move_suite_ambient_four(s3_ctx):
    ctx = EvalContext.make(s3_ctx.cat, s3_ctx.x, ambient=4)
    entries = {e.move_id: e for e in move_suite(ctx)}
    assert entries["crossing-symmetry"].required
    assert entries["crossing-symmetry"].passed
    entries3 = {e.move_id: e for e in move_suite(s3_ctx)}
    assert not entries3["crossing-symmetry"].required
    assert "not required" in entries3["crossing-symmetry"].note


def test_scaled_context_fails_framed_r1(s3_ctx):
    ctx = EvalContext.make(s3_ctx.cat, s3_ctx.x, scale=2.0)
    entries = {e.move_id: e for e in move_suite(ctx)}
    assert entries["zigzag-plus"].passed  # still a duality
    assert entries["r2"].passed
    assert not entries["framed-r1"].passed
    assert entries["framed-r1"].deviation == pytest.approx(3.0, abs=1e-9)


def test_unknot_presentations_agree(s3_ctx, odd_ctx):
    for ctx, want in ((s3_ctx, 2.0), (odd_ctx, 1.0)):
        values = [evaluate_scalar(text, ctx) for text in UNKNOT_PRESENTATIONS]
        assert len(values) >= 5
        for v in values:
            assert v == pytest.approx(want, abs=1e-8)


def test_hopf_presentations_agree(s3_ctx, odd_ctx):
    for ctx in (s3_ctx, odd_ctx):
        values = [evaluate_scalar(text, ctx) for text in HOPF_PRESENTATIONS]
        assert len(values) >= 3
        first = values[0]
        for v in values[1:]:
            assert v == pytest.approx(first, abs=1e-8)


def test_move_check_boundary_mismatch(s3_ctx):
    with pytest.raises(TangleTypeError):
        move_check("id+", "id+ | id+", s3_ctx)
