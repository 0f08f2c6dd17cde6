"""Command-line driver: each subcommand reads JSON documents, runs one
pipeline, and writes a deterministic JSON report.

Exit status: 0 on success, 2 when the mathematics answers no (not a
quasi-isomorphism, not mixed, no section), 1 on malformed input.
"""

import argparse
import json
import os
import sys

from . import documents as docs
from .complexes import cohomology, ChainMap, is_quasi_iso
from .cosimplicial import (tot_n, dold_kan_D, normalize, TruncationTooSmall)
from .thomsullivan import th, integration_map
from .filtration import (spectral_sequence, is_er_quasi_iso, mixedness_check,
                         NotFiltered, IncompatibleFiltration)
from .bar import bar, h0_hopf, pi_n, NotAugmented, NotConnected
from .connection import (section_check, cohomology_section_check,
                         validate as validate_connection,
                         EnumerationBoundExceeded, laurent)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2



def _failing_degrees(induced, cap=None):
    from .linalg import rank
    out = []
    for deg, m in induced.items():
        if cap is not None and deg > cap:
            continue
        if m.rows != m.cols or rank(m) != m.rows:
            out.append(deg)
    return sorted(out)

def _betti_of(value, kind):
    cx = value.complex if kind == "cdga" else value
    h = cohomology(cx)
    return cx, {str(deg): h[deg].dim if deg in h else 0
                for deg in cx.degrees()}


def _load_map(path, source, target):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise docs.InputError("cannot read map file: %s" % e, path)
    return docs.chain_map_from_json(obj, source, target, path)


def _figure_betti(betti, outdir, name):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    degs = sorted(int(k) for k in betti)
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(degs, [betti[str(d)] for d in degs], color="steelblue")
    ax.set_xlabel("degree")
    ax.set_ylabel("dim H")
    ax.set_xticks(degs)
    fig.tight_layout()
    path = os.path.join(outdir, name)
    fig.savefig(path)
    plt.close(fig)
    return path


def _figure_pages(pages, outdir, name):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, axes = plt.subplots(1, len(pages), figsize=(3 * len(pages), 3),
                             squeeze=False)
    for ax, page in zip(axes[0], pages):
        spots = [(p, q) for (p, q), d in sorted(page.entries.items()) if d]
        if spots:
            ax.scatter([p for p, q in spots], [q for p, q in spots],
                       s=[40 * page.entries[s] for s in spots], color="firebrick")
        ax.set_title("page %d" % page.r)
        ax.set_xlabel("p")
        ax.set_ylabel("q")
    fig.tight_layout()
    path = os.path.join(outdir, name)
    fig.savefig(path)
    plt.close(fig)
    return path


def cmd_cohomology(args):
    kind, value = docs.load(args.input)
    if kind not in ("complex", "cdga"):
        raise docs.InputError("cohomology expects a complex or cdga, got %s"
                              % kind, args.input)
    cx, betti = _betti_of(value, kind)
    report = {"command": "cohomology", "betti": betti,
              "euler_characteristic": cx.euler_characteristic()}
    if args.figures:
        report["figures"] = [_figure_betti(betti, args.figures, "betti.png")]
    return report, EXIT_OK


def cmd_quasi_iso(args):
    skind, src = docs.load(args.source)
    tkind, tgt = docs.load(args.target)
    for kind, path in ((skind, args.source), (tkind, args.target)):
        if kind not in ("complex", "cdga"):
            raise docs.InputError("quasi-iso expects complexes or cdgas", path)
    scx = src.complex if skind == "cdga" else src
    tcx = tgt.complex if tkind == "cdga" else tgt
    f = _load_map(args.map, scx, tcx)
    ok, induced = is_quasi_iso(f, up_to=args.degree_cap)
    report = {"command": "quasi-iso", "verdict": bool(ok),
              "degree_cap": args.degree_cap,
              "failing_degrees": _failing_degrees(induced, args.degree_cap)}
    return report, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_dold_kan(args):
    kind, a = docs.load(args.input)
    if kind != "cdga":
        raise docs.InputError("dold-kan expects a cdga, got %s" % kind,
                              args.input)
    N = args.degree_cap if args.degree_cap is not None else a.top + 1
    try:
        dk = dold_kan_D(a, N)
    except TruncationTooSmall as e:
        raise docs.InputError("truncation too small: %s" % e, args.input)
    total, norm, offsets = tot_n(dk)
    _, betti_a = _betti_of(a, "cdga")
    h = cohomology(total)
    betti_nd = {str(deg): h[deg].dim if deg in h else 0
                for deg in total.degrees()}
    match = all(betti_nd.get(k, 0) == v for k, v in betti_a.items()) and \
        all(v == 0 for k, v in betti_nd.items() if k not in betti_a)
    report = {"command": "dold-kan", "levels": N,
              "level_dims": [dk.levels[n].dims for n in range(N + 1)],
              "betti_input": betti_a, "betti_normalized_total": betti_nd,
              "round_trip_cohomology_match": match}
    return report, EXIT_OK if match else EXIT_NEGATIVE


def cmd_tot_n(args):
    kind, c = docs.load(args.input)
    if kind != "cosimplicial":
        raise docs.InputError("tot-n expects a cosimplicial object, got %s"
                              % kind, args.input)
    total, norm, offsets = tot_n(c)
    h = cohomology(total)
    betti = {str(deg): h[deg].dim if deg in h else 0
             for deg in total.degrees()}
    report = {"command": "tot-n", "dims": list(total.dims),
              "lower_bound": total.lower_bound, "betti": betti}
    if args.figures:
        report["figures"] = [_figure_betti(betti, args.figures, "tot_betti.png")]
    return report, EXIT_OK


def cmd_thom(args):
    kind, value = docs.load(args.input)
    if kind == "th_request":
        c = value["cosimplicial"]
        M = value.get("degree_cap", args.degree_cap)
        w = value.get("weight_cap", args.weight_cap)
    elif kind == "cosimplicial":
        c, M, w = value, args.degree_cap, args.weight_cap
    else:
        raise docs.InputError("thom expects a cosimplicial object or "
                              "th_request, got %s" % kind, args.input)
    if M is None:
        raise docs.InputError("degree cap required (--degree-cap)", args.input)
    if w is None:
        w = M + 2
    try:
        f, model, total, norm, offsets = integration_map(c, M, w)
    except TruncationTooSmall as e:
        raise docs.InputError(str(e), args.input)
    ok, induced = is_quasi_iso(f, up_to=M)
    report = {"command": "thom", "degree_cap": M, "weight_cap": w,
              "integration_chain_map": True, "quasi_iso_up_to_cap": bool(ok),
              "failing_degrees": _failing_degrees(induced, M),
              "th_dims": {str(m): model.algebra.dim(m) for m in range(M + 1)}}
    return report, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_spectral(args):
    kind, fc = docs.load(args.input)
    if kind != "filtered_complex":
        raise docs.InputError("spectral expects a filtered_complex, got %s"
                              % kind, args.input)
    pages = spectral_sequence(fc, args.r_max)
    report = {"command": "spectral", "r_max": args.r_max, "pages": [
        {"r": page.r,
         "entries": {"%d,%d" % s: d for s, d in sorted(page.entries.items())
                     if d},
         "degenerate": page.is_degenerate()}
        for page in pages]}
    if args.figures:
        report["figures"] = [_figure_pages(pages, args.figures, "pages.png")]
    return report, EXIT_OK


def cmd_mixedness(args):
    kind, fc = docs.load(args.input)
    if kind != "filtered_complex":
        raise docs.InputError("mixedness expects a filtered_complex, got %s"
                              % kind, args.input)
    fkind, frob_pair = docs.load(args.frobenius)
    if fkind != "frobenius":
        raise docs.InputError("second input must be a frobenius document",
                              args.frobenius)
    frob, fcx = frob_pair
    if fcx.dims != fc.complex.dims or fcx.lower_bound != fc.complex.lower_bound:
        raise docs.InputError("frobenius operators live on a different "
                              "complex", args.frobenius)
    try:
        rep = mixedness_check(fc, frob)
    except (NotFiltered, IncompatibleFiltration) as e:
        raise docs.InputError(str(e), args.input)
    report = {"command": "mixedness", "verdict": rep.verdict,
              "spots": {"%d,%d" % s: {"verdict": v.verdict,
                                      "detail": str(v.detail)}
                        for s, v in sorted(rep.spots.items())}}
    return report, EXIT_OK if rep.verdict == "mixed" else EXIT_NEGATIVE


def cmd_er_quasi_iso(args):
    skind, src = docs.load(args.source)
    tkind, tgt = docs.load(args.target)
    if skind != "filtered_complex" or tkind != "filtered_complex":
        raise docs.InputError("er-quasi-iso expects two filtered complexes",
                              args.source)
    f = _load_map(args.map, src.complex, tgt.complex)
    try:
        ok = is_er_quasi_iso(f, src, tgt, args.r)
    except NotFiltered as e:
        raise docs.InputError(str(e), args.map)
    report = {"command": "er-quasi-iso", "r": args.r, "verdict": bool(ok)}
    return report, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_bar(args):
    kind, req = docs.load(args.input)
    if kind == "cdga":
        req = {"cdga": req, "word_cap": args.word_cap or 3, "ops": ["h0"]}
    elif kind != "bar_request":
        raise docs.InputError("bar expects a cdga or bar_request, got %s"
                              % kind, args.input)
    L = args.word_cap if args.word_cap is not None else req["word_cap"]
    try:
        b = bar(req["cdga"], L)
    except (NotAugmented, NotConnected) as e:
        raise docs.InputError(str(e), args.input)
    h = cohomology(b.complex)
    betti = {str(deg): h[deg].dim if deg in h else 0
             for deg in b.complex.degrees()}
    report = {"command": "bar", "word_cap": L, "dims": list(b.complex.dims),
              "lower_bound": b.complex.lower_bound, "betti": betti}
    ops = req.get("ops", ["h0"])
    if "h0" in ops or "primitives" in ops:
        hopf = h0_hopf(b)
        report["h0_dim"] = hopf.dim
        if "primitives" in ops:
            report["primitive_dim"] = hopf.primitives().dim
    if args.figures:
        report["figures"] = [_figure_betti(betti, args.figures,
                                           "bar_betti.png")]
    return report, EXIT_OK


def cmd_pi(args):
    kind, req = docs.load(args.input)
    if kind == "cdga":
        req = {"cdga": req, "word_cap": args.word_cap or 3}
    elif kind != "bar_request":
        raise docs.InputError("pi expects a cdga or bar_request, got %s"
                              % kind, args.input)
    n = args.pi_n if args.pi_n is not None else req.get("n")
    if not isinstance(n, int) or n < 2:
        raise docs.InputError("pi needs an integer n >= 2 (--pi-n)",
                              args.input)
    L = args.word_cap if args.word_cap is not None else req["word_cap"]
    try:
        dim, labels, data = pi_n(req["cdga"], n, L)
    except (NotAugmented, NotConnected) as e:
        raise docs.InputError(str(e), args.input)
    report = {"command": "pi", "n": n, "word_cap": L, "dim": dim,
              "dual_basis": labels}
    return report, EXIT_OK


def cmd_section_check(args):
    kind, req = docs.load(args.input)
    if kind == "connection_algebra":
        if args.window is None:
            raise docs.InputError("--window required with a bare "
                                  "connection_algebra", args.input)
        req = {"algebra": req, "window": args.window,
               "enum_bound": args.enum_bound}
    elif kind != "section_request":
        raise docs.InputError("section-check expects a connection_algebra or "
                              "section_request, got %s" % kind, args.input)
    ca = req["algebra"]
    bad = validate_connection(ca)
    if bad:
        raise docs.InputError("connection algebra invalid: %s" % "; ".join(bad),
                              args.input)
    W = args.window if args.window is not None else req["window"]
    bound = args.enum_bound if args.enum_bound is not None else \
        req.get("enum_bound", 4)
    report = {"command": "section-check", "window": W, "enum_bound": bound,
              "cohomology_section": cohomology_section_check(ca, max(W, 2))}
    try:
        res = section_check(ca, W, enum_bound=bound)
    except EnumerationBoundExceeded as e:
        report["verdict"] = "unknown"
        report["reason"] = str(e)
        return report, EXIT_OK
    if res["sections"]:
        report["verdict"] = "sections_found"
        report["sections"] = [[docs.laurent_to_json(x) for x in phi]
                              for phi in res["sections"]]
        return report, EXIT_OK
    report["verdict"] = "no_section"
    report["certificate"] = res["certificate"]
    return report, EXIT_NEGATIVE


def build_parser():
    p = argparse.ArgumentParser(prog="cdgakit",
                                description="Exact computations with "
                                "cochain algebras: totalization, spectral "
                                "sequences, bar construction, sections.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, inputs=("input",)):
        sp = sub.add_parser(name)
        for inp in inputs:
            sp.add_argument(inp)
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--figures", help="directory for rendered figures")
        sp.add_argument("--degree-cap", type=int, default=None)
        sp.add_argument("--weight-cap", type=int, default=None)
        sp.add_argument("--word-cap", type=int, default=None)
        sp.add_argument("--window", type=int, default=None)
        sp.add_argument("--r-max", type=int, default=2)
        sp.add_argument("--enum-bound", type=int, default=None)
        sp.add_argument("--precision", type=int, default=30)
        sp.add_argument("--pi-n", type=int, default=None)
        sp.add_argument("--r", type=int, default=1)
        sp.add_argument("--map", default=None)
        sp.set_defaults(fn=fn)
        return sp

    add("cohomology", cmd_cohomology)
    add("quasi-iso", cmd_quasi_iso, inputs=("source", "target"))
    add("dold-kan", cmd_dold_kan)
    add("tot-n", cmd_tot_n)
    add("thom", cmd_thom)
    add("spectral", cmd_spectral)
    add("mixedness", cmd_mixedness, inputs=("input", "frobenius"))
    add("er-quasi-iso", cmd_er_quasi_iso, inputs=("source", "target"))
    add("bar", cmd_bar)
    add("pi", cmd_pi)
    add("section-check", cmd_section_check)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
    try:
        report, status = args.fn(args)
    except docs.InputError as e:
        sys.stderr.write("input error: %s\n" % e)
        return EXIT_INPUT
    text = docs.dumps(docs.wrap("report", report))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
