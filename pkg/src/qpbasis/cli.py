"""Command-line entry point: basis enumeration, character tables,
vector actions, span oracles, and verification runs.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 truncation-soundness violation.  The QP_THREADS environment variable
caps the worker count for relation batches.
"""

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from .basis_enum import BasisSpec, enumerate_basis, graded_count
from .modules import ModuleHandle, highest_weight_vector
from .quasiparticle import QPFactor, QPMonomial, apply_qp_mode
from .verifier import (check_main_theorem, check_relation, exact_rank,
                       oracle_span, relation_ids)


class RunConfig:
    """Resolved run parameters shared by the subcommands."""

    __slots__ = ("n", "c", "weight", "depth", "flavor", "fmt", "seed")

    def __init__(self, n, c, weight, depth, flavor="type1",
                 fmt="json", seed=0):
        c0, cj, j = weight
        if c0 < 0 or cj < 0 or c0 + cj == 0:
            raise click.UsageError(
                "weight must satisfy c0, cj >= 0 and c0 + cj > 0")
        if not (0 <= j <= n):
            raise click.UsageError("weight index j must lie in 0..n")
        if c is not None and c != c0 + cj:
            raise click.UsageError(
                "--c disagrees with the weight's total level")
        self.n = n
        self.c = c0 + cj
        self.weight = (c0, cj, j)
        self.depth = depth
        self.flavor = flavor
        self.fmt = fmt
        self.seed = seed

    def handle(self):
        c0, cj, j = self.weight
        return ModuleHandle.from_weight(self.n, c0, cj, j, self.depth)


def _parse_weight(_ctx, _param, value):
    try:
        c0, cj, j = (int(p) for p in value.split(","))
    except ValueError:
        raise click.UsageError("--weight expects c0,cj,j")
    return (c0, cj, j)


def _scalar_str(s):
    text = repr(s)
    return text[len("Scalar("):-1] if text.startswith("Scalar(") else text


def _vector_json(v):
    terms = sorted(v.terms.items(), key=lambda kv: repr(kv[0]))
    return {"truncated": v.truncated,
            "terms": [{"basis": repr(k), "coeff": _scalar_str(c)}
                      for k, c in terms]}


def _common(fn):
    fn = click.option("--n", required=True, type=int,
                      help="rank of the root system")(fn)
    fn = click.option("--c", type=int, default=None,
                      help="level (optional, checked against --weight)")(fn)
    fn = click.option("--weight", required=True, callback=_parse_weight,
                      help="highest weight as c0,cj,j")(fn)
    fn = click.option("--depth", required=True, type=int,
                      help="degree window N (degrees 0..-N)")(fn)
    fn = click.option("--flavor", default="type1",
                      type=click.Choice(["type1", "type2"]))(fn)
    return fn


@click.group()
def main():
    """Quasi-particle bases of principal subspaces."""


@main.command()
@_common
def basis(n, c, weight, depth, flavor):
    """Enumerate predicted basis monomials as JSON lines."""
    cfg = RunConfig(n, c, weight, depth, flavor)
    spec = BasisSpec(cfg.handle(), depth, flavor)
    for mono in enumerate_basis(spec):
        rec = mono.to_json()
        rec["flavor"] = flavor
        click.echo(json.dumps(rec, sort_keys=True))


@main.command()
@_common
def char(n, c, weight, depth, flavor):
    """Graded character table as CSV (color_type,degree,count)."""
    cfg = RunConfig(n, c, weight, depth, flavor)
    gc = graded_count(BasisSpec(cfg.handle(), depth, flavor))
    click.echo("color_type,degree,count")
    for (ct, d), cnt in sorted(gc.table.items()):
        click.echo("%s,%d,%d" % ("|".join(str(x) for x in ct), d, cnt))


@main.command()
@_common
@click.option("--factor", "factors", multiple=True, required=True,
              help="quasi-particle factor as color,charge,degree; "
                   "repeatable, leftmost factor acts last")
def act(n, c, weight, depth, flavor, factors):
    """Apply quasi-particle modes to the highest weight vector."""
    cfg = RunConfig(n, c, weight, depth, flavor)
    h = cfg.handle()
    parsed = []
    for spec in factors:
        try:
            color, charge, degree = (int(p) for p in spec.split(","))
        except ValueError:
            raise click.UsageError("--factor expects color,charge,degree")
        parsed.append(QPFactor(color, charge, degree, flavor))
    v = highest_weight_vector(h)
    for f in reversed(parsed):
        v = apply_qp_mode(h, f, f.degree, v)
    click.echo(json.dumps(_vector_json(v), sort_keys=True))
    if v.truncated:
        sys.exit(3)


@main.command()
@_common
@click.option("--key", required=True,
              help="weight key as c_1,...,c_n,degree")
def oracle(n, c, weight, depth, flavor, key):
    """Span-oracle rank for one weight key."""
    cfg = RunConfig(n, c, weight, depth, flavor)
    try:
        parts = [int(p) for p in key.split(",")]
        counts, deg = tuple(parts[:-1]), parts[-1]
        if len(counts) != n:
            raise ValueError
    except ValueError:
        raise click.UsageError("--key expects n color counts and a degree")
    vectors = oracle_span(cfg.handle(), (counts, deg))
    out = {"color_type": list(counts), "degree": deg,
           "vectors": len(vectors), "oracle_rank": exact_rank(vectors),
           "truncated": any(v.truncated for v in vectors)}
    click.echo(json.dumps(out, sort_keys=True))
    if out["truncated"]:
        sys.exit(3)


@main.group()
def verify():
    """Verification runs with a JSON report on stdout."""


def _emit_main_report(cfg):
    reports = check_main_theorem(cfg.handle(), cfg.depth)
    payload = [r.to_json() for r in reports]
    truncated = [r for r in reports if r.truncated]
    ok = all(r.ok() for r in reports)
    doc = {"target": "main", "n": cfg.n, "weight": list(cfg.weight),
           "depth": cfg.depth, "ok": ok, "reports": payload}
    if truncated:
        doc["truncated_key"] = payload[reports.index(truncated[0])]
    return doc, (3 if truncated else (0 if ok else 1))


def _run_relations(ids, window):
    workers = max(1, int(os.environ.get("QP_THREADS", "1")))
    if workers == 1:
        checks = [check_relation(rid, window=window) for rid in ids]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checks = list(pool.map(
                lambda rid: check_relation(rid, window=window), ids))
    ok = all(ch.ok() for ch in checks)
    doc = {"target": "relations", "window": window, "ok": ok,
           "checks": [ch.to_json() for ch in checks]}
    return doc, (0 if ok else 1)


@verify.command("main")
@_common
def verify_main(n, c, weight, depth, flavor):
    """Check oracle rank = predicted count = basis rank per key."""
    cfg = RunConfig(n, c, weight, depth, flavor)
    doc, code = _emit_main_report(cfg)
    click.echo(json.dumps(doc, sort_keys=True))
    sys.exit(code)


@verify.command("relations")
@click.option("--id", "rid", default=None,
              help="single relation id R1..R11; default runs all")
@click.option("--window", default=8, type=int)
def verify_relations(rid, window):
    """Run the relation catalog (or one entry)."""
    if rid is not None and rid not in relation_ids():
        raise click.UsageError("unknown relation id %r" % rid)
    ids = [rid] if rid else relation_ids()
    doc, code = _run_relations(ids, window)
    click.echo(json.dumps(doc, sort_keys=True))
    sys.exit(code)


@verify.command("all")
@_common
@click.option("--window", default=8, type=int)
def verify_all(n, c, weight, depth, flavor, window):
    """Main-theorem grid for one handle plus the full catalog."""
    cfg = RunConfig(n, c, weight, depth, flavor)
    doc_m, code_m = _emit_main_report(cfg)
    doc_r, code_r = _run_relations(relation_ids(), window)
    doc = {"target": "all", "main": doc_m, "relations": doc_r,
           "ok": doc_m["ok"] and doc_r["ok"]}
    click.echo(json.dumps(doc, sort_keys=True))
    sys.exit(max(code_m, code_r))


if __name__ == "__main__":
    main()
