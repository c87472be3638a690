"""Expression corpora: well-formed inputs with their trees, malformed inputs with offsets."""

from latspec.expr import Add, Call, Const, Div, Mul, Neg, Num, Pow, Sub, Var

n, x = Var("n"), Var("x")
pi, e, i = Const("pi"), Const("e"), Const("i")


def N(v):
    return Num(float(v))


# (text, variable, expected tree)
GOOD = [
    ("1/n", "n", Div(N(1), n)),
    ("(-1)^n + 2", "n", Add(Pow(Neg(N(1)), n), N(2))),
    ("n", "n", n),
    ("42", "n", N(42)),
    ("3.5", "x", N(3.5)),
    (".5", "x", N(0.5)),
    ("2.", "x", N(2)),
    ("1e3", "x", N(1000)),
    ("2.5E-2", "x", N(0.025)),
    ("pi", "x", pi),
    ("e", "x", e),
    ("i", "x", i),
    ("-x", "x", Neg(x)),
    ("--x", "x", Neg(Neg(x))),
    ("1 + 2 + 3", "x", Add(Add(N(1), N(2)), N(3))),
    ("1 - 2 - 3", "x", Sub(Sub(N(1), N(2)), N(3))),
    ("1 - 2 + 3", "x", Add(Sub(N(1), N(2)), N(3))),
    ("8 / 4 / 2", "x", Div(Div(N(8), N(4)), N(2))),
    ("8 / 4 * 2", "x", Mul(Div(N(8), N(4)), N(2))),
    ("1 + 2 * 3", "x", Add(N(1), Mul(N(2), N(3)))),
    ("(1 + 2) * 3", "x", Mul(Add(N(1), N(2)), N(3))),
    ("2 ^ 3 ^ 2", "x", Pow(N(2), Pow(N(3), N(2)))),
    ("(2 ^ 3) ^ 2", "x", Pow(Pow(N(2), N(3)), N(2))),
    ("-2 ^ 2", "x", Neg(Pow(N(2), N(2)))),
    ("(-2) ^ 2", "x", Pow(Neg(N(2)), N(2))),
    ("2 ^ -1", "x", Pow(N(2), Neg(N(1)))),
    ("2 ^ -x ^ 2", "x", Pow(N(2), Neg(Pow(x, N(2))))),
    ("2 * -x", "x", Mul(N(2), Neg(x))),
    ("-x * 2", "x", Mul(Neg(x), N(2))),
    ("-x + 1", "x", Add(Neg(x), N(1))),
    ("1 - -x", "x", Sub(N(1), Neg(x))),
    ("x ^ 2 * 3", "x", Mul(Pow(x, N(2)), N(3))),
    ("3 * x ^ 2", "x", Mul(N(3), Pow(x, N(2)))),
    ("sin(x)", "x", Call("sin", x)),
    ("cos(pi * x)", "x", Call("cos", Mul(pi, x))),
    ("exp(i * x)", "x", Call("exp", Mul(i, x))),
    ("log(x + 1)", "x", Call("log", Add(x, N(1)))),
    ("abs(x - 1)", "x", Call("abs", Sub(x, N(1)))),
    ("sqrt(2)", "x", Call("sqrt", N(2))),
    ("re(x)", "x", Call("re", x)),
    ("im(x)", "x", Call("im", x)),
    ("conj(x)", "x", Call("conj", x)),
    ("sin(x)^2 + cos(x)^2", "x",
     Add(Pow(Call("sin", x), N(2)), Pow(Call("cos", x), N(2)))),
    ("-sin(x)", "x", Neg(Call("sin", x))),
    ("sin(-x)", "x", Call("sin", Neg(x))),
    ("exp(log(x))", "x", Call("exp", Call("log", x))),
    ("2 + sin(n)", "n", Add(N(2), Call("sin", n))),
    ("1 + 1/n", "n", Add(N(1), Div(N(1), n))),
    ("x * (1 - x)", "x", Mul(x, Sub(N(1), x))),
    ("((x))", "x", x),
    ("  1\t+\n x ", "x", Add(N(1), x)),
    ("1+2*i", None, Add(N(1), Mul(N(2), i))),
    ("e^(i*pi)", None, Pow(e, Mul(i, pi))),
    ("n/(n+1)", "n", Div(n, Add(n, N(1)))),
    ("(-1)^n / n", "n", Div(Pow(Neg(N(1)), n), n)),
    ("abs(sin(n))^0.5", "n", Pow(Call("abs", Call("sin", n)), N(0.5))),
    ("3 - 2 * x / 4", "x", Sub(N(3), Div(Mul(N(2), x), N(4)))),
]

# (text, variable, 1-based error offset)
BAD = [
    ("sin(pi*x", "x", 9),
    ("2n", "n", 2),
    ("1 +", "x", 4),
    ("* 2", "x", 1),
    ("(1 + 2", "x", 7),
    ("1 + 2)", "x", 6),
    ("x $ 2", "x", 3),
    ("sin x", "x", 5),
    ("y + 1", "x", 1),
    ("n + x", "n", 5),
    ("sin()", "x", 5),
    ("1 ^", "x", 4),
    ("()", "x", 2),
    ("2 3", "x", 3),
    ("foo(1)", "x", 1),
]
