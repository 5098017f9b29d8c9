"""Command-line entry point.

Exit codes: 0 success (certificate found, Refuted), 1 usage or input error,
2 negative answer (certify found nothing, refute is Inconclusive).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cover import cover, expected_counts, relators_lift_correctly, subgroup_to_json, verify_subgroup
from .euclid import envelope_slope, fit_step_bound, growth_experiment, rows_to_csv
from .freequot import DEFAULT_BUDGET, NotFound, audit, certificate_from_json, certify_large
from .goodpres import good_to_json, make_good
from .lowindex import refute_largeness_at_index
from .presentation import exponent_matrix, is_bp, load, serialize
from .word import MalformedInput

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    k: int = 1
    k_max: int | None = None
    budget: int = DEFAULT_BUDGET
    index: int = 1
    rank: int = 2
    lengths: list[int] = field(default_factory=lambda: [100, 1000, 10000])
    samples: int = 200
    seed: int = 0
    jobs: int = 1
    out: str | None = None
    sidecar: str | None = None

    def __post_init__(self):
        for name in ("k", "budget", "index", "samples", "jobs"):
            if getattr(self, name) < (0 if name == "budget" else 1):
                raise MalformedInput(f"--{name} must be positive")
        if self.k_max is not None and self.k_max < 1:
            raise MalformedInput("--kmax must be positive")
        if any(L < 0 for L in self.lengths):
            raise MalformedInput("--lengths must be nonnegative")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bplarge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, file=True):
        p = sub.add_parser(name, help=help)
        if file:
            p.add_argument("input", help="presentation file" if name != "verify" else "certificate JSON")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--jobs", type=int, default=1)
        return p

    add("parse", "check and normalise a presentation")
    p = add("goodpres", "make one generator have zero exponent sum everywhere")
    p.add_argument("--sidecar", help="path for the JSON sidecar")
    p = add("cover", "Reidemeister-Schreier presentation of the index-k cyclic cover")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sidecar", help="path for the JSON sidecar")
    p = add("certify", "search for a certified surjection of a cover onto F2")
    p.add_argument("--kmax", dest="k_max", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add("verify", "re-check a certificate JSON")
    p = add("refute", "bounded refutation via low-index subgroups")
    p.add_argument("--index", type=int, required=True)
    p = add("growth", "random-word growth study, CSV output", file=False)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--lengths", type=_int_list, default=[100, 1000, 10000])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _with_sidecar(cfg: RunConfig, text: str, payload: dict) -> str:
    # without a sidecar path the JSON rides along as a single comment line
    blob = json.dumps(payload, sort_keys=True)
    path = cfg.sidecar or (cfg.out + ".json" if cfg.out else None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return text
    return text + "#sidecar " + blob + "\n"


def run(cfg: RunConfig) -> int:
    if cfg.command == "growth":
        rows = growth_experiment(cfg.rank, cfg.lengths, cfg.samples, cfg.seed, jobs=cfg.jobs)
        _emit(cfg, rows_to_csv(rows))
        if len({r["length"] for r in rows}) >= 2:
            C, D = fit_step_bound(rows)
            print(
                f"seed={cfg.seed} envelope_slope={envelope_slope(rows):.4f} "
                f"fitted_steps<={C:.3f}*log2(len)+{D:.3f}",
                file=sys.stderr,
            )
        return EXIT_OK

    if cfg.command == "verify":
        with open(cfg.input, encoding="utf-8") as fh:
            cert = certificate_from_json(json.load(fh))
        ok = audit(cert)
        _emit(cfg, ("ok" if ok else "FAILED") + f" k={cert.k}\n")
        return EXIT_OK if ok else EXIT_ERROR

    p = load(cfg.input)

    if cfg.command == "parse":
        M = exponent_matrix(p)
        lines = [serialize(p).rstrip("\n")]
        lines.append(f"# rank {p.rank}, relators {len(p.relators)}, deficiency {p.deficiency}, bp {is_bp(p)}")
        lines += ["# exponents " + " ".join(map(str, row)) for row in M]
        _emit(cfg, "\n".join(lines) + "\n")
        return EXIT_OK

    if cfg.command == "goodpres":
        g = make_good(p)
        _emit(cfg, _with_sidecar(cfg, serialize(g.base), good_to_json(g)))
        return EXIT_OK

    if cfg.command == "cover":
        g = make_good(p)
        s = cover(g, cfg.k)
        n, m = p.rank, len(p.relators)
        gens, rels = expected_counts(n, m, cfg.k)
        payload = {
            "format": 1,
            "t_index": g.t_index,
            "t_name": g.t_name,
            "subgroup": subgroup_to_json(s, p.generator_names),
            "checks": {
                "generators": s.rank,
                "expected_generators": gens,
                "relators": len(s.relators),
                "expected_relators": rels,
                "deficiency": s.deficiency,
                "verified": verify_subgroup(s, g, cfg.k),
                "relators_lift": relators_lift_correctly(s, g.base),
            },
        }
        _emit(cfg, _with_sidecar(cfg, s.to_text(), payload))
        return EXIT_OK

    if cfg.command == "certify":
        try:
            cert = certify_large(p, k_max=cfg.k_max, budget=cfg.budget, jobs=cfg.jobs)
        except NotFound as exc:
            _emit(cfg, json.dumps({"format": 1, "kind": "not-found", "search": exc.stats}, indent=2) + "\n")
            return EXIT_NEGATIVE
        _emit(cfg, json.dumps(cert.to_json(), indent=2) + "\n")
        return EXIT_OK

    if cfg.command == "refute":
        ref = refute_largeness_at_index(p, cfg.index, jobs=cfg.jobs)
        _emit(cfg, json.dumps(ref.to_json(), indent=2) + "\n")
        return EXIT_OK if ref.refuted else EXIT_NEGATIVE

    raise MalformedInput(f"unknown command {cfg.command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
        return run(cfg)
    except (MalformedInput, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"bplarge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
