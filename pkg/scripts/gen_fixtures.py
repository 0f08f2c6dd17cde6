"""Regenerate the JSON fixture corpus under tests/fixtures and the golden
reports under tests/golden. Run from the repository root:

    python3 scripts/gen_fixtures.py
"""

import json
import os
import subprocess
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cdgakit import documents as docs
from cdgakit.linalg import Matrix
from cdgakit.complexes import Complex, identity_map
from cdgakit.cdga import CDGA, ground_field
from cdgakit.cosimplicial import constant_cosimplicial
from cdgakit.filtration import FilteredComplex, FrobStructure
from cdgakit.connection import obstruction_instance, ConnectionAlgebra, laurent, L_ZERO

F = Fraction
ROOT = os.path.join(os.path.dirname(__file__), "..")
FIX = os.path.join(ROOT, "tests", "fixtures")
GOLD = os.path.join(ROOT, "tests", "golden")


def write(name, doc):
    with open(os.path.join(FIX, name), "w") as fh:
        fh.write(docs.dumps(doc))


def free_deg1(n):
    cx = Complex([1, n], [Matrix.zero(n, 1)])
    mult = {(0, 0): Matrix([[F(1)]], 1, 1), (0, 1): Matrix.identity(n),
            (1, 0): Matrix.identity(n)}
    return CDGA(cx, mult, (F(1),), (F(1),))


def sphere_like():
    cx = Complex([1, 0, 1], [Matrix.zero(0, 1), Matrix.zero(1, 0)])
    mult = {(0, 0): Matrix([[F(1)]], 1, 1), (0, 2): Matrix.identity(1),
            (2, 0): Matrix.identity(1)}
    return CDGA(cx, mult, (F(1),), (F(1),))


def main():
    os.makedirs(FIX, exist_ok=True)
    os.makedirs(GOLD, exist_ok=True)

    # dims (2, 1) complex with d = [1 0]: H^0 = 1, H^1 = 0
    c = Complex([2, 1], [Matrix([[F(1), F(0)]], 1, 2)])
    write("complex_small.json", docs.wrap("complex", docs.complex_to_json(c)))

    # identity and zero self-maps for the quasi-iso command
    ident = identity_map(c)
    with open(os.path.join(FIX, "map_identity.json"), "w") as fh:
        fh.write(docs.dumps(docs.chain_map_to_json(ident)))
    zero = {"components": {str(d): docs.matrix_to_json(Matrix.zero(c.dim(d), c.dim(d)))
                           for d in c.degrees()}}
    with open(os.path.join(FIX, "map_zero.json"), "w") as fh:
        fh.write(docs.dumps(zero))

    write("cdga_sphere.json", docs.wrap("cdga", docs.cdga_to_json(sphere_like())))
    write("cdga_free2.json", docs.wrap("cdga", docs.cdga_to_json(free_deg1(2))))

    write("bar_request_free2.json", docs.wrap("bar_request", {
        "cdga": docs.cdga_to_json(free_deg1(2)), "word_cap": 3,
        "ops": ["h0", "primitives"]}))
    write("pi_request_sphere.json", docs.wrap("bar_request", {
        "cdga": docs.cdga_to_json(sphere_like()), "word_cap": 3, "n": 2}))

    K = ground_field(augmented=True)
    write("cosimplicial_constant.json", docs.wrap(
        "cosimplicial", docs.cosimplicial_to_json(constant_cosimplicial(K, 3))))
    write("th_request_constant.json", docs.wrap("th_request", {
        "cosimplicial": docs.cosimplicial_to_json(constant_cosimplicial(K, 3)),
        "degree_cap": 2, "weight_cap": 4}))

    # mixed filtered complex: degree 0 plane, W_0 a line, W_1 = W_0, W_2 all;
    # Frobenius diag(1, q) with q = 2 is pure of weights 0 and 2 on the pieces
    cx = Complex([2], [])
    from cdgakit.linalg import Subspace
    w0 = Subspace(2, [(F(1), F(0))])
    filt = {0: [w0, w0, Subspace(2, [(F(1), F(0)), (F(0), F(1))])]}
    fc = FilteredComplex(cx, filt, 0, 2)
    write("filtered_mixed.json", docs.wrap("filtered_complex",
                                           docs.filtered_to_json(fc)))
    frob = FrobStructure(2, {0: Matrix([[F(1), F(0)], [F(0), F(2)]], 2, 2)}, cx)
    write("frobenius_mixed.json", docs.wrap("frobenius",
                                            docs.frobenius_to_json(frob, cx)))
    # impure variant: weight-1 spot of dimension 1 cannot be pure
    filt_b = {0: [w0, Subspace(2, [(F(1), F(0)), (F(0), F(1))])]}
    fcb = FilteredComplex(cx, filt_b, 0, 1)
    write("filtered_impure.json", docs.wrap("filtered_complex",
                                            docs.filtered_to_json(fcb)))

    # two-degree filtered complex for spectral / er-quasi-iso
    cx2 = Complex([2, 1], [Matrix([[F(1), F(-1)]], 1, 2)])
    w0 = Subspace(2, [(F(1), F(1))])
    w1 = Subspace(2, [(F(1), F(0)), (F(0), F(1))])
    fc2 = FilteredComplex(cx2, {0: [w0, w1], 1: [Subspace(1, []),
                                                 Subspace(1, [(F(1),)])]}, 0, 1)
    write("filtered_two_step.json", docs.wrap("filtered_complex",
                                              docs.filtered_to_json(fc2)))
    with open(os.path.join(FIX, "map_identity2.json"), "w") as fh:
        fh.write(docs.dumps(docs.chain_map_to_json(identity_map(cx2))))

    # connection algebra requests
    write("section_request_obstruction.json", docs.wrap("section_request", {
        "algebra": docs.connection_to_json(obstruction_instance()),
        "window": 3, "enum_bound": 4}))
    one = laurent({0: F(1)})
    mult = {(0, 0): [one, L_ZERO], (0, 1): [L_ZERO, one],
            (1, 0): [L_ZERO, one], (1, 1): [one, L_ZERO]}
    split = ConnectionAlgebra(2, mult, [one, L_ZERO],
                              [[L_ZERO, L_ZERO], [L_ZERO, L_ZERO]])
    write("section_request_split.json", docs.wrap("section_request", {
        "algebra": docs.connection_to_json(split), "window": 1,
        "enum_bound": 4}))

    # malformed inputs for the error path
    with open(os.path.join(FIX, "bad_kind.json"), "w") as fh:
        fh.write(docs.dumps({"format_version": "1", "kind": "mystery",
                             "payload": {}}))
    with open(os.path.join(FIX, "bad_version.json"), "w") as fh:
        fh.write(docs.dumps({"format_version": "99", "kind": "complex",
                             "payload": {"dims": [1], "d": []}}))

    # golden reports via the CLI
    cases = [
        ("complex_small.report.json", ["cohomology", "complex_small.json"]),
        ("tot_constant.report.json", ["tot-n", "cosimplicial_constant.json"]),
        ("thom_constant.report.json", ["thom", "th_request_constant.json"]),
        ("dold_kan_sphere.report.json",
         ["dold-kan", "cdga_sphere.json", "--degree-cap", "3"]),
        ("bar_free2.report.json", ["bar", "bar_request_free2.json"]),
        ("pi_sphere.report.json", ["pi", "pi_request_sphere.json"]),
        ("spectral_two_step.report.json",
         ["spectral", "filtered_two_step.json", "--r-max", "2"]),
        ("mixedness_mixed.report.json",
         ["mixedness", "filtered_mixed.json", "frobenius_mixed.json"]),
        ("mixedness_impure.report.json",
         ["mixedness", "filtered_impure.json", "frobenius_mixed.json"]),
        ("quasi_iso_identity.report.json",
         ["quasi-iso", "complex_small.json", "complex_small.json",
          "--map", "map_identity.json"]),
        ("quasi_iso_zero.report.json",
         ["quasi-iso", "complex_small.json", "complex_small.json",
          "--map", "map_zero.json"]),
        ("er_quasi_iso.report.json",
         ["er-quasi-iso", "filtered_two_step.json", "filtered_two_step.json",
          "--map", "map_identity2.json", "--r", "1"]),
        ("section_obstruction.report.json",
         ["section-check", "section_request_obstruction.json"]),
        ("section_split.report.json",
         ["section-check", "section_request_split.json"]),
    ]
    from cdgakit.cli import main as cli_main
    statuses = {}
    for gold_name, argv in cases:
        full = [argv[0]] + [os.path.join(FIX, a) if a.endswith(".json") else a
                            for a in argv[1:]]
        out = os.path.join(GOLD, gold_name)
        status = cli_main(full + ["--output", out])
        statuses[gold_name] = status
    with open(os.path.join(GOLD, "statuses.json"), "w") as fh:
        json.dump(statuses, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("fixtures and goldens written;", statuses)


if __name__ == "__main__":
    main()
