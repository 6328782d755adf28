import cmath

import numpy as np
import pytest

from paraplex import exprlang as E
from paraplex.errors import ExprSyntaxError, UnboundVariable, UnknownFunction
from paraplex.jets import seed_point


def plain_eval(node, env):
    """Independent reference evaluator over Python complex numbers."""
    if isinstance(node, E.Num):
        return complex(node.value)
    if isinstance(node, E.Var):
        return complex(env[node.name])
    if isinstance(node, E.Neg):
        return -plain_eval(node.arg, env)
    if isinstance(node, E.BinOp):
        a, b = plain_eval(node.left, env), plain_eval(node.right, env)
        return {"+": a + b, "-": a - b, "*": a * b, "/": a / b, "^": a**b}[node.op]
    if isinstance(node, E.Call):
        if node.func == "i":
            return 1j
        a = plain_eval(node.args[0], env)
        table = {
            "sqrt": cmath.sqrt,
            "exp": cmath.exp,
            "log": cmath.log,
            "sin": cmath.sin,
            "cos": cmath.cos,
            "abs2": lambda z: complex((z * z.conjugate()).real),
            "re": lambda z: complex(z.real),
            "im": lambda z: complex(z.imag),
            "conj": lambda z: z.conjugate(),
        }
        return table[node.func](a)
    raise TypeError(node)


ROUNDTRIP_SOURCES = [
    "1/(1+abs2(Z1-Z2)/4)^0.5",
    "(Z1+conj(Z2))*i()",
    "sin(x)^2+cos(x)^2",
    "a-b-c",
    "a/b/c",
    "2^3^2",
    "-x^2",
    "exp(i()*phi)*r",
    "re(Z1)*im(Z2)-abs2(conj(Z1))",
]


@pytest.mark.parametrize("src", ROUNDTRIP_SOURCES)
def test_parse_print_parse_fixed_point(src):
    ast = E.parse(src)
    assert E.parse(E.to_source(ast)) == ast


def test_conformal_factor_ast_depth():
    ast = E.parse("1/(1+abs2(Z1-Z2)/4)^0.5")

    def depth(n):
        if isinstance(n, (E.Num, E.Var)):
            return 1
        if isinstance(n, E.Neg):
            return 1 + depth(n.arg)
        if isinstance(n, E.BinOp):
            return 1 + max(depth(n.left), depth(n.right))
        if isinstance(n, E.Call):
            return 1 + max((depth(a) for a in n.args), default=0)
        raise TypeError(n)

    assert depth(ast) >= 5


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as err:
        E.parse("1+")
    assert err.value.column == 3
    assert err.value.line == 1


def test_unknown_function():
    with pytest.raises(UnknownFunction):
        E.parse("frobnicate(2)")


def test_complex_example_against_oracle():
    src = "(Z1+conj(Z2))*i()"
    ast = E.parse(src)
    env = {"Z1": 1.0, "Z2": 1j}
    mine = complex(E.evaluate(ast, env).cvalue)
    assert abs(mine - (1 + 1j)) < 1e-15
    assert abs(mine - plain_eval(ast, env)) < 1e-15


def test_random_expressions_against_oracle():
    rng = np.random.default_rng(0)
    sources = [
        "sin(Z1)*cos(Z2)+exp(i()*re(Z1))",
        "abs2(Z1-Z2)/(2+re(Z1*conj(Z2)))",
        "(Z1^3 - conj(Z2)^2)/(3+abs2(Z1))",
    ]
    for src in sources:
        ast = E.parse(src)
        for _ in range(10):
            env = {
                "Z1": complex(rng.normal(), rng.normal()) * 0.5,
                "Z2": complex(rng.normal(), rng.normal()) * 0.5,
            }
            mine = complex(E.evaluate(ast, env).cvalue)
            ref = plain_eval(ast, env)
            assert abs(mine - ref) < 1e-12


def test_integer_powers():
    assert complex(E.evaluate(E.parse("2^3"), {}).cvalue) == 8.0
    assert complex(E.evaluate(E.parse("2^3^2"), {}).cvalue) == 512.0


def test_abs2():
    assert abs(complex(E.evaluate(E.parse("abs2(Z1)"), {"Z1": 3 + 4j}).cvalue) - 25.0) < 1e-14


def test_trig_identity_50_points():
    rng = np.random.default_rng(1)
    ast = E.parse("sin(x)^2+cos(x)^2")
    for _ in range(50):
        out = E.evaluate(ast, {"x": float(rng.normal() * 3)})
        assert abs(complex(out.cvalue) - 1.0) < 1e-12


def test_unbound_variable_rejected():
    with pytest.raises(UnboundVariable):
        E.evaluate(E.parse("x+y"), {"x": 1.0})
    with pytest.raises(UnboundVariable):
        E.compile_program("Z1+qqq", ("Z1", "Z2"))


def test_jet_order0_matches_plain_eval():
    rng = np.random.default_rng(2)
    prog = E.compile_program("1/(1+abs2(Z1-Z2)/4)^0.5", ("Z1", "Z2"))
    ast = E.parse("1/(1+abs2(Z1-Z2)/4)^0.5")
    for _ in range(10):
        p = rng.uniform(-0.7, 0.7, 4)
        out = prog(seed_point(p))
        env = {"Z1": complex(p[0], p[1]), "Z2": complex(p[2], p[3])}
        assert abs(complex(out.cvalue) - plain_eval(ast, env)) < 1e-13


def test_determinism_bit_identical():
    prog = E.compile_program("exp(i()*re(Z1))*abs2(Z2)", ("Z1", "Z2"))
    p = np.array([0.3, -0.4, 0.5, 0.9])
    a = prog(seed_point(p))
    b = prog(seed_point(p))
    assert np.array_equal(a.re.value, b.re.value)
    assert np.array_equal(a.re.grad, b.re.grad)
    assert np.array_equal(a.im.hess, b.im.hess)


def test_real_chart_bindings():
    prog = E.compile_program("x0*x1 + sin(x2)", ("x0", "x1", "x2", "x3"))
    out = prog(seed_point(np.array([2.0, 3.0, 0.0, 0.0])))
    assert abs(complex(out.cvalue) - 6.0) < 1e-14
