#!/usr/bin/env python3
"""Independent straight-line network evaluator; freezes test vectors.

Evaluates small feedforward nets (alternating affine map + activation,
no activation on the output layer) with explicit loops, plus an analytic
forward-mode gradient, and writes the weights, probe points and expected
values as C++ literals into tests/frozen/network_cases.hpp and one net as
tests/frozen/reference_net.json.  Values are frozen at 17 significant
digits; the C++ tests compare against them rather than re-deriving.
"""

import json
import os
import numpy as np

OUT_HPP = os.path.join(os.path.dirname(__file__), "..", "..", "tests",
                       "frozen", "network_cases.hpp")
OUT_JSON = os.path.join(os.path.dirname(__file__), "..", "..", "tests",
                        "frozen", "reference_net.json")


def act(kind, x):
    if kind == "softplus":
        return np.where(x > 30.0, x, np.log1p(np.exp(np.minimum(x, 30.0))))
    if kind == "logistic":
        return 1.0 / (1.0 + np.exp(-x))
    raise ValueError(kind)


def act_deriv(kind, x):
    if kind == "softplus":
        return 1.0 / (1.0 + np.exp(-x))
    if kind == "logistic":
        s = 1.0 / (1.0 + np.exp(-x))
        return s * (1.0 - s)
    raise ValueError(kind)


def realize(kind, Ws, bs, x):
    """Straight-line evaluation: hidden layers activated, last affine."""
    a = np.asarray(x, dtype=np.float64)
    for k in range(len(Ws) - 1):
        a = act(kind, Ws[k] @ a + bs[k])
    return Ws[-1] @ a + bs[-1]


def gradient(kind, Ws, bs, x):
    """Forward-mode Jacobian accumulation; returns d(out)/dx for scalar out."""
    a = np.asarray(x, dtype=np.float64)
    J = np.eye(len(a))
    for k in range(len(Ws) - 1):
        z = Ws[k] @ a + bs[k]
        J = (act_deriv(kind, z)[:, None]) * (Ws[k] @ J)
        a = act(kind, z)
    J = Ws[-1] @ J
    assert J.shape[0] == 1
    return J[0]


def fmt(v):
    return "{:.17g}".format(float(v))


def cpp_vec(vals):
    return "{" + ", ".join(fmt(v) for v in vals) + "}"


def make_case(rng, kind, shape, npoints, scale=1.0):
    Ws = []
    bs = []
    for k in range(1, len(shape)):
        Ws.append(rng.normal(0.0, scale, size=(shape[k], shape[k - 1])))
        bs.append(rng.normal(0.0, scale, size=shape[k]))
    points = [rng.normal(0.0, 2.0, size=shape[0]) for _ in range(npoints)]
    outs = [realize(kind, Ws, bs, x) for x in points]
    grads = []
    if shape[-1] == 1:
        grads = [gradient(kind, Ws, bs, x) for x in points]
    return dict(kind=kind, shape=shape, Ws=Ws, bs=bs, points=points,
                outs=outs, grads=grads)


def main():
    rng = np.random.Generator(np.random.PCG64(20260815))
    cases = [
        make_case(rng, "softplus", [3, 5, 4, 1], 10),
        make_case(rng, "logistic", [2, 4, 1], 8),
        make_case(rng, "softplus", [4, 6, 3, 2], 6),
        make_case(rng, "softplus", [1, 1, 1], 5, scale=1.5),
    ]

    lines = []
    lines.append("// Generated by tools/oracles/gen_network_cases.py."
                 "  Do not edit.")
    lines.append("#pragma once")
    lines.append("")
    lines.append("#include <string>")
    lines.append("#include <vector>")
    lines.append("")
    lines.append("namespace frozen {")
    lines.append("")
    lines.append("struct NetworkCase {")
    lines.append("  std::string activation;")
    lines.append("  std::vector<int> shape;  // l_0 .. l_L")
    lines.append("  std::vector<std::vector<double>> weights;  "
                 "// row-major, one per layer")
    lines.append("  std::vector<std::vector<double>> biases;")
    lines.append("  std::vector<std::vector<double>> inputs;")
    lines.append("  std::vector<std::vector<double>> outputs;")
    lines.append("  std::vector<std::vector<double>> gradients;  "
                 "// empty unless l_L == 1")
    lines.append("};")
    lines.append("")
    lines.append("inline const std::vector<NetworkCase>& network_cases() {")
    lines.append("  static const std::vector<NetworkCase> cases = {")
    for c in cases:
        lines.append("      {")
        lines.append('          "%s",' % c["kind"])
        lines.append("          {%s}," % ", ".join(str(s) for s in c["shape"]))
        lines.append("          {%s}," % ", ".join(
            cpp_vec(W.flatten()) for W in c["Ws"]))
        lines.append("          {%s}," % ", ".join(cpp_vec(b) for b in c["bs"]))
        lines.append("          {%s}," % ", ".join(
            cpp_vec(x) for x in c["points"]))
        lines.append("          {%s}," % ", ".join(
            cpp_vec(y) for y in c["outs"]))
        lines.append("          {%s}," % ", ".join(
            cpp_vec(g) for g in c["grads"]))
        lines.append("      },")
    lines.append("  };")
    lines.append("  return cases;")
    lines.append("}")
    lines.append("")
    lines.append("}  // namespace frozen")
    with open(OUT_HPP, "w") as f:
        f.write("\n".join(lines) + "\n")

    # Reference JSON for the first case pins the serialization format.
    c = cases[0]
    doc = {
        "activation": c["kind"],
        "layers": [
            {
                "rows": int(W.shape[0]),
                "cols": int(W.shape[1]),
                "weights": [float(fmt(v)) for v in W.flatten()],
                "bias": [float(fmt(v)) for v in b],
            }
            for W, b in zip(c["Ws"], c["bs"])
        ],
    }
    with open(OUT_JSON, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")
    print("wrote", OUT_HPP)
    print("wrote", OUT_JSON)


if __name__ == "__main__":
    main()
