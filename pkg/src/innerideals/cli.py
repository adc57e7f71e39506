"""Command-line front end.

Exit status: 0 when everything requested passed, 1 when a verification
failed, 2 for malformed input (unknown form, bad arguments).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .innerideal import atlas_entry, corner_basis, enumerate_classes, hasse
from .liealg import (
    ad_nilpotency_index,
    eigenspace_grading,
    is_abelian,
    is_inner_ideal,
    is_point_space,
    killing_signature,
    signature_value,
    sl2_triple,
)
from .rootsys import (
    RootSystemType,
    build_root_system,
    chevalley_algebra,
    chevalley_node_degrees,
    diagram_automorphisms,
    grading_by_node,
)
from .satake import RealFormId, all_forms, catalog, real_rank, restricted_roots

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Report:
    command: str
    subject: str
    payload: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    status: int = EXIT_OK

    def to_json(self) -> dict:
        return {"command": self.command, "subject": self.subject, "result": self.payload, "status": self.status}

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        self.payload.setdefault("checks", {})[name] = {"ok": bool(ok), "detail": detail}
        self.lines.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  {detail}" if detail else ""))
        if not ok:
            self.status = EXIT_FAIL
        return ok


def _fmt_set(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


# ----- roots / satake -----

def cmd_roots(args) -> Report:
    rst = RootSystemType.parse(args.type)
    rs = build_root_system(rst)
    auts = diagram_automorphisms(rs)
    r = Report("roots", str(rst))
    r.payload = {
        "type": str(rst),
        "roots": len(rs.roots),
        "positive_roots": len(rs.positive_roots),
        "maximal_root": list(rs.maximal_root),
        "cartan_matrix": [list(row) for row in rs.cartan_matrix],
        "diagram_automorphisms": [[i + 1 for i in p] for p in auts],
    }
    r.lines += [
        f"{rst}: {len(rs.roots)} roots, maximal root {tuple(rs.maximal_root)}",
        f"diagram automorphisms: {len(auts)}",
    ]
    if args.grading_node:
        g = grading_by_node(rs, args.grading_node)
        dims = g.dims()
        r.payload["grading"] = {str(k): v for k, v in dims.items()}
        r.lines.append(f"grading by node {args.grading_node}: " + ", ".join(f"{k}:{v}" for k, v in dims.items()))
    return r


def cmd_satake(args) -> Report:
    sd = catalog(args.form)
    rr = restricted_roots(sd)
    r = Report("satake", sd.real_form.name)
    r.payload = dict(sd.to_json(), type=str(sd.rst), killing_signature=sd.killing_signature)
    r.payload["restricted_multiplicities"] = [[list(k), v] for k, v in sorted(rr.multiplicities.items())]
    colors = " ".join(f"{i}{'o' if c == 'white' else '*'}" for i, c in sorted(sd.colors.items()))
    r.lines += [
        f"{sd.real_form.name}  type {sd.rst}  real rank {real_rank(sd)}",
        f"nodes  {colors}   (o white, * black)",
        "arrows " + (" ".join(f"{a}<->{b}" for a, b in sd.arrows) or "none"),
    ]
    if sd.killing_signature is not None:
        r.lines.append(f"Killing signature {sd.killing_signature}")
    return r


# ----- inner ideals -----

def cmd_inner_ideals(args) -> Report:
    sd = catalog(args.form)
    classes = enumerate_classes(sd)
    lat = hasse(classes)
    r = Report("inner-ideals", sd.real_form.name)
    r.payload = {
        "real_form": sd.real_form.name,
        "classes": [c.to_json() for c in classes],
        "dims": [c.dim for c in classes],
        "chain_length": lat.chain_length(),
    }
    if args.dims:
        r.lines.append(" ".join(str(c.dim) for c in classes) or "(none)")
    else:
        r.lines.append(f"{sd.real_form.name}: {len(classes)} classes, chain length {lat.chain_length()}")
        for c in classes:
            rep = c.min_rep if args.reps == "min" else c.max_rep
            r.lines.append(f"  dim {c.dim:>4}  {_fmt_set(rep)}")
    if args.lattice == "json":
        r.payload["lattice"] = lat.to_json()
        r.lines.append(json.dumps(lat.to_json(), sort_keys=True))
    elif args.lattice == "dot":
        r.lines.append(lat.to_dot(sd.real_form.name).rstrip())
    if args.dot:
        Path(args.dot).write_text(lat.to_dot(sd.real_form.name))
    return r


# ----- constructions -----

def _kantor_for(c1: str, c2: str | None):
    from .structurable import jordan_h3, kantor, tensor_structurable

    if c1.lower() == "h3":
        if not c2:
            raise ValueError("h3 needs a composition algebra, e.g. 'h3 Os'")
        return kantor(jordan_h3(c2))
    if not c2:
        raise ValueError("kantor needs two composition algebras")
    return kantor(tensor_structurable(c1, c2))


def _signature_checks(r: Report, L, expect: int | None) -> None:
    from .structurable import identify_real_form

    sig = killing_signature(L)
    val = signature_value(sig)
    r.payload["signature"] = val
    r.payload["killing_inertia"] = list(sig)
    r.lines.append(f"Killing signature {val}  (+{sig[0]}, -{sig[1]}, 0:{sig[2]})")
    try:
        rf = identify_real_form(L, sig)
        r.payload["identified"] = rf.name
        r.lines.append(f"identified as {rf.name}")
    except ValueError as exc:
        r.payload["identified"] = None
        r.lines.append(str(exc))
    if expect is not None:
        r.check("signature", val == expect, f"expected {expect}, got {val}")
    else:
        r.check("signature", sig[2] == 0, "nondegenerate" if sig[2] == 0 else "degenerate")


def _kantor_inner_ideal_checks(r: Report, k, seed: int) -> None:
    from .exact import Subspace
    from .structurable import albert_form, half_plus_skew_inner_ideal, isotropic_inner_ideal, maximal_isotropic, witt_index

    a = k.algebra
    if a.factors:
        q = albert_form(a)
        w = witt_index(q)
        r.payload["witt_index"] = w
        r.lines.append(f"Albert form signature {q.signature()[:2]}, Witt index {w}")
        m = maximal_isotropic(q)
        for j in range(1, w + 1):
            B = isotropic_inner_ideal(k, Subspace.span(m.basis[:j], q.dim))
            r.check(f"isotropic dim {j}", is_inner_ideal(k.lie, B) and is_abelian(k.lie, B))
        rng = random.Random(seed)
        for _ in range(50):
            v = [rng.randint(-3, 3) for _ in range(q.dim)]
            if q(v) != 0:
                B = k.embed_subspace(2, Subspace.span([v], q.dim))
                r.check("anisotropic line rejected", not is_inner_ideal(k.lie, B), f"{v}")
                break
        if k.sizes[2]:
            r.check("all of K_2", is_inner_ideal(k.lie, k.embed_subspace(2, Subspace.span(
                [[int(i == j) for j in range(q.dim)] for i in range(q.dim)], q.dim))))
        if a.factors[1].name == "Cs":
            _, B = half_plus_skew_inner_ideal(a.factors[0], k)
            r.check(f"C1 x e1 + K_2 (dim {B.dim})", is_inner_ideal(k.lie, B))
    else:
        from .structurable import h3_six_dim_inner_ideal, is_jordan_inner_ideal

        if getattr(a, "h3_base", None) is not None and a.h3_base.name == "Os":
            B = h3_six_dim_inner_ideal(a)
            r.check("6-dim Jordan inner ideal", is_jordan_inner_ideal(a, B))
            r.check("6-dim inner ideal in K_1", is_inner_ideal(k.lie, k.embed_subspace(1, B)))


def cmd_kantor(args) -> Report:
    k = _kantor_for(args.c1, args.c2)
    L = k.lie
    r = Report("kantor", L.name)
    r.payload = {"dim": L.dim, "graded_dims": {str(d): n for d, n in sorted(k.sizes.items())}, "instr": k.instr.dim}
    r.lines.append(f"{L.name}: dim {L.dim}, pieces " + " ".join(f"{d}:{n}" for d, n in sorted(k.sizes.items())))
    if args.verify:
        bad = L.verify_jacobi()
        r.check("jacobi", bad is None, "" if bad is None else f"triple {bad}")
    if args.signature or args.identify:
        _signature_checks(r, L, None)
    if args.inner_ideals:
        _kantor_inner_ideal_checks(r, k, args.seed)
    if args.export:
        Path(args.export).write_text(json.dumps(L.triples_json()) + "\n")
    return r


def cmd_jordan(args) -> Report:
    from .structurable import h3_six_dim_inner_ideal, is_jordan_inner_ideal, jordan_h3

    if args.kind.lower() != "h3":
        raise ValueError("only 'jordan h3 <C>' is available")
    J = jordan_h3(args.c)
    r = Report("jordan", J.name)
    r.payload = {"dim": J.dim}
    r.lines.append(f"{J.name}: dim {J.dim}, Jordan identity verified")
    if args.inner_ideal_demo:
        if J.h3_base.name != "Os":
            raise ValueError("the demo inner ideal lives in H3(Os)")
        B = h3_six_dim_inner_ideal(J)
        r.payload["demo_dim"] = B.dim
        r.check(f"U_B(J) in B for the {B.dim}-dim subspace", is_jordan_inner_ideal(J, B))
    return r


def _chevalley_checks(r: Report, args) -> None:
    rs = build_root_system(RootSystemType.parse(args.c1))
    alg = chevalley_algebra(rs, verify=False)
    r.payload["dim"] = alg.dim
    r.lines.append(f"chevalley {rs.rst}: dim {alg.dim}")
    if args.jacobi:
        bad = alg.verify_jacobi()
        r.check("jacobi", bad is None, "" if bad is None else f"triple {bad}")
    if args.signature or args.expect_signature is not None:
        _signature_checks(r, alg, args.expect_signature)
    if args.grading_node:
        g = grading_by_node(rs, args.grading_node)
        top = [i for i, d in enumerate(chevalley_node_degrees(rs, alg, args.grading_node)) if d == g.top]
        r.payload["top_corner_dim"] = len(top)
        r.lines.append(f"node {args.grading_node}: top degree {g.top}, corner dim {len(top)}")
        if args.point_space:
            P = [alg.unit(i) for i in top]
            ok = is_point_space(alg, P)
            r.payload["point_space"] = ok
            r.lines.append(f"point space: {str(ok).lower()}")
    if args.inner_ideals:
        for c in enumerate_classes(rs.rst):
            B = [alg.unit(i) for i in corner_basis(rs, c.min_rep)]
            r.check(f"B_{_fmt_set(c.min_rep)} dim {c.dim}", len(B) == c.dim and is_inner_ideal(alg, B) and is_abelian(alg, B))
    if args.sl2:
        rng = random.Random(args.seed)
        classes = enumerate_classes(rs.rst)
        for _ in range(args.samples):
            c = rng.choice(classes)
            idx = corner_basis(rs, c.min_rep)
            e = [0] * alg.dim
            while not any(e):
                for i in idx:
                    e[i] = rng.randint(-2, 2)
            n = ad_nilpotency_index(alg, e)
            t = sl2_triple(alg, e)
            spec = set(eigenspace_grading(alg, t.h))
            r.check(f"sl2 on B_{_fmt_set(c.min_rep)}", n == 3 and spec <= {-2, -1, 0, 1, 2}, f"nilpotency {n}, spectrum {sorted(spec)}")


def cmd_verify(args) -> Report:
    what = args.what.lower()
    r = Report("verify", " ".join(x for x in (args.what, args.c1, args.c2) if x))
    if what == "chevalley":
        _chevalley_checks(r, args)
        return r
    if what not in ("kantor", "jordan"):
        raise ValueError(f"cannot verify {args.what!r}; expected kantor, jordan or chevalley")
    k = _kantor_for("h3", args.c1) if what == "jordan" else _kantor_for(args.c1, args.c2)
    r.payload["dim"] = k.lie.dim
    r.lines.append(f"{k.lie.name}: dim {k.lie.dim}")
    if args.jacobi:
        bad = k.lie.verify_jacobi()
        r.check("jacobi", bad is None, "" if bad is None else f"triple {bad}")
    if args.signature or args.expect_signature is not None:
        _signature_checks(r, k.lie, args.expect_signature)
    if args.inner_ideals:
        _kantor_inner_ideal_checks(r, k, args.seed)
    return r


# ----- atlas -----

def golden_name(rf: RealFormId) -> str:
    return rf.name.replace("*", "star").replace(",", "_") + ".json"


def cmd_atlas(args) -> Report:
    r = Report("atlas", "all" if args.all else (args.form or ""))
    if not args.all:
        if not args.form:
            raise ValueError("give a real form or --all")
        r.payload = atlas_entry(args.form)
        r.lines.append(json.dumps(r.payload, sort_keys=True, indent=1))
        return r
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for rf in all_forms(args.max_rank):
        text = json.dumps(atlas_entry(rf), sort_keys=True, indent=1) + "\n"
        (out / golden_name(rf)).write_text(text)
        names.append(rf.name)
    r.payload = {"forms": names, "out": str(out)}
    r.lines.append(f"wrote {len(names)} files to {out}")
    return r


# ----- parser -----

def _global(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--dot", metavar="FILE", default=d(None), help="write a Hasse diagram in DOT format")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="innerideals", description="Inner ideals of real simple Lie algebras.")
    _global(p, False)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        _global(sp, True)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("roots", cmd_roots, "root system summary")
    sp.add_argument("type", help="e.g. E8, B3")
    sp.add_argument("--grading-node", type=int)

    sp = add("satake", cmd_satake, "Satake diagram of a real form")
    sp.add_argument("form", help="e.g. e6,-14 or su,2,5")

    sp = add("inner-ideals", cmd_inner_ideals, "conjugacy classes of abelian inner ideals")
    sp.add_argument("form")
    sp.add_argument("--lattice", choices=("dot", "json"))
    sp.add_argument("--dims", action="store_true", help="print only the dimensions")
    sp.add_argument("--reps", choices=("min", "max"), default="min")

    sp = add("kantor", cmd_kantor, "Kantor construction of C1 x C2 (or h3 C)")
    sp.add_argument("c1")
    sp.add_argument("c2", nargs="?")
    sp.add_argument("--verify", action="store_true", help="exhaustive Jacobi check")
    sp.add_argument("--signature", action="store_true")
    sp.add_argument("--identify", action="store_true")
    sp.add_argument("--inner-ideals", action="store_true")
    sp.add_argument("--export", metavar="FILE", help="write structure constants as JSON triples")

    sp = add("jordan", cmd_jordan, "Jordan algebras H3(C)")
    sp.add_argument("kind", help="h3")
    sp.add_argument("c")
    sp.add_argument("--inner-ideal-demo", action="store_true")

    sp = add("verify", cmd_verify, "run verifications on a construction")
    sp.add_argument("what", help="kantor, jordan or chevalley")
    sp.add_argument("c1")
    sp.add_argument("c2", nargs="?")
    sp.add_argument("--jacobi", action="store_true")
    sp.add_argument("--signature", action="store_true")
    sp.add_argument("--expect-signature", type=int)
    sp.add_argument("--inner-ideals", action="store_true")
    sp.add_argument("--grading-node", type=int)
    sp.add_argument("--point-space", action="store_true")
    sp.add_argument("--sl2", action="store_true")
    sp.add_argument("--samples", type=int, default=4)

    sp = add("atlas", cmd_atlas, "classification data for one form or the whole catalog")
    sp.add_argument("form", nargs="?")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--out", default="tests/golden")
    sp.add_argument("--max-rank", type=int, default=8)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print("\n".join(report.lines))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
