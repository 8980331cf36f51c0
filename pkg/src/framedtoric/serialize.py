"""JSON encoding helpers.  All integers serialize as decimal strings so that
downstream consumers never overflow 64-bit parsers; rationals as "p/q"."""

from __future__ import annotations

from fractions import Fraction


def enc_int(x):
    return str(int(x))


def enc_rat(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def enc_vec(v):
    return [enc_int(x) for x in v]


def enc_mat(A):
    return [enc_vec(row) for row in A]


def dec_int(s):
    return int(s)


def dec_mat(A):
    return [[int(x) for x in row] for row in A]


def class_group_to_json(cg):
    return {
        "free_rank": enc_int(cg.free_rank),
        "invariant_factors": enc_vec(cg.invariant_factors),
        "weight_matrix": enc_mat(cg.weight_matrix),
        "torsion_matrix": enc_mat(cg.torsion_matrix),
    }


def ideal_to_json(ideal):
    return [[enc_int(i) for i in g] for g in ideal.generators]


def model_to_json(model, polynomials):
    return {
        "dual_fan_matrix": enc_mat(model.dual_fan_matrix),
        "dual_blocks": enc_mat(model.dual_blocks),
        "block_origin": enc_vec(model.block_origin),
        "exponent_matrices": [enc_mat(M) for M in model.exponent_matrices],
        "irrelevant_ideal": ideal_to_json(model.irrelevant_ideal),
        "class_group": class_group_to_json(model.class_group),
        "degrees": [enc_vec(d) for d in model.degrees],
        "polynomials": polynomials,
    }
