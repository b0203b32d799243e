"""Command-line driver: ``pg4track <subcommand> [flags]``.

Exit codes: 0 success, 1 a verification found a violation (or an uncovered
point), 2 the q-hypothesis refused a build, 3 bad input or I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import codes, construct, coverproof, verify
from .gfield import GF, FieldError, check_modulus
from .projgeom import GeometryError, PointSet

EXIT_OK, EXIT_VIOLATION, EXIT_HYPOTHESIS, EXIT_IO = 0, 1, 2, 3
DEFAULT_SEED = 42
REPORT_COLUMNS = ("q", "size", "is_track", "is_complete", "d", "dual_d", "upper_bound", "elliptic_size")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    qmax: int | None = None
    input: Path | None = None
    output: Path | None = None
    force: bool = False
    threads: int = 1
    sample: int | None = None
    seed: int = DEFAULT_SEED
    exhaustive: bool = False
    point: tuple[int, int, int, int] | None = None
    family: str = "track"
    planes: str = "VV"
    figure: bool = True

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        cfg = cls(**{k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__})
        try:
            if cfg.q is not None:
                check_modulus(cfg.q)
            if cfg.qmax is not None and cfg.qmax < 5:
                raise FieldError("--qmax must be at least 5")
        except FieldError as exc:
            raise InputError(str(exc)) from exc
        if cfg.threads < 1:
            raise InputError("--threads must be positive")
        return cfg


def admissible_qs(qmax: int) -> list[int]:
    """Primes 5 <= q <= qmax with 3 a non-square."""
    out = []
    for q in range(5, qmax + 1):
        try:
            check_modulus(q)
        except FieldError:
            continue
        if GF(q).chi(3) == -1:
            out.append(q)
    return out


def _parse_point(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from exc
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("--point takes a,b,c,d")
    return vals


def _emit(payload, cfg: RunConfig) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if cfg.output:
        try:
            cfg.output.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {cfg.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _need_q(cfg: RunConfig) -> int:
    if cfg.q is None:
        raise InputError(f"{cfg.command} needs --q")
    return cfg.q


def _load_set(cfg: RunConfig) -> PointSet:
    if cfg.input is not None:
        try:
            return PointSet.load(cfg.input)
        except (OSError, ValueError, FieldError) as exc:
            raise InputError(f"cannot read point set from {cfg.input}: {exc}") from exc
    return construct.build_track(_need_q(cfg), force=cfg.force).full


def cmd_construct(cfg: RunConfig) -> int:
    q = _need_q(cfg)
    fam = construct.build_track(q, force=cfg.force)
    S = {"N": fam.N, "V": fam.V, "track": fam.full}[cfg.family]
    data = S.to_dict(family=cfg.family)
    summary = f"q={q} family={cfg.family} size={len(S)} three_nonsquare={str(fam.three_nonsquare).lower()}"
    if cfg.output:
        _emit(data, cfg)
        print(summary)
    else:
        sys.stdout.write(json.dumps(data) + "\n")
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    S = _load_set(cfg)
    tr = verify.is_track(S, threads=cfg.threads)
    out = {"q": S.q, "n": len(S), **tr.to_dict(), "is_complete": None, "addable": [],
           "covered": None, "p4_size": None}
    if tr.is_track:
        cr = verify.addable_points(S, threads=cfg.threads, check=False)
        out.update(cr.to_dict())
    _emit(out, cfg)
    return EXIT_OK if tr.is_track and out["is_complete"] else EXIT_VIOLATION


def cmd_complete(cfg: RunConfig) -> int:
    S = _load_set(cfg)
    try:
        cr = verify.addable_points(S, threads=cfg.threads)
    except verify.VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    _emit({"q": S.q, "n": len(S), **cr.to_dict()}, cfg)
    return EXIT_OK if cr.is_complete else EXIT_VIOLATION


def cmd_cover(cfg: RunConfig) -> int:
    q = _need_q(cfg)
    if cfg.point is None:
        raise InputError("cover needs --point a,b,c,d")
    T = coverproof.AffineTarget(*cfg.point).reduced(q)
    out = coverproof.cover_summary(T, q)
    if cfg.exhaustive:
        S = construct.build_track(q, force=cfg.force).full
        P = T.point()
        out["brute_any"] = None if P in S else len(verify.brute_cover_search(P, S))
    _emit(out, cfg)
    return EXIT_OK if out["route"] != "none" else EXIT_VIOLATION


def _route_covered(T: coverproof.AffineTarget, q: int, planes: verify.Restrict) -> bool:
    if planes is verify.Restrict.VVN:
        return coverproof.cover_witness(T, q) is not None
    return coverproof.matrix_a_witness(T, q, require_rootless=False, poles=True) is not None


def cmd_cover_gap(cfg: RunConfig) -> int:
    q = _need_q(cfg)
    planes = verify.Restrict(cfg.planes)
    S = construct.build_track(q, force=cfg.force).full
    if cfg.exhaustive:
        gaps = verify.uncovered_affine(S, planes, threads=cfg.threads)
        checked = q**4
    else:
        n = cfg.sample if cfg.sample is not None else 1000
        rng = random.Random(cfg.seed)
        gaps, seen = [], set()
        for _ in range(n):
            T = coverproof.AffineTarget(*(rng.randrange(q) for _ in range(4)))
            P = T.point()
            if P in S or P in seen:
                continue
            if not _route_covered(T, q, planes):
                seen.add(P)
                gaps.append(P)
        gaps.sort()
        checked = n
    table = verify.TripleTable(S) if gaps else None
    listed = []
    ok = True
    for P in gaps:
        hits = table.covering(P, verify.Restrict.ANY)
        wit = [int(x) for x in hits[0]] if len(hits) else None
        ok &= wit is not None
        listed.append({"point": list(P), "any_witness": wit})
    _emit({"q": q, "planes": planes.value, "mode": "exhaustive" if cfg.exhaustive else "sample",
           "seed": None if cfg.exhaustive else cfg.seed, "checked": checked,
           "uncovered_count": len(listed), "uncovered": listed}, cfg)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_curve(cfg: RunConfig) -> int:
    q = _need_q(cfg)
    slack = coverproof.hasse_weil_slack(q)
    if cfg.point is not None:
        T = coverproof.AffineTarget(*cfg.point).reduced(q)
        targets = [T]
    else:
        rng = random.Random(cfg.seed)
        targets = []
        while len(targets) < (cfg.sample or 50):
            T = coverproof.AffineTarget(*(rng.randrange(q) for _ in range(4)))
            if not coverproof.poly_square_root(coverproof.big_F(T, q)):
                targets.append(T)
    rows = []
    for T in targets:
        n = coverproof.curve_point_count(T, q)
        square = coverproof.poly_square_root(coverproof.big_F(T, q)) is not None
        rows.append({"target": list(T), "curve_points": n, "F_is_square": square,
                     "in_band": abs(n - (q + 1)) <= slack + 2})
    out = {"q": q, "hasse_weil_slack": slack, "targets": rows}
    _emit(out, cfg)
    if cfg.output and cfg.figure and len(rows) > 1:
        from .plotting import curve_count_figure

        curve_count_figure(q, [r["curve_points"] for r in rows], cfg.output.with_suffix(".png"), slack)
    return EXIT_OK if all(r["in_band"] or r["F_is_square"] for r in rows) else EXIT_VIOLATION


def cmd_code(cfg: RunConfig) -> int:
    S = _load_set(cfg)
    try:
        out = codes.code_report(S)
    except codes.CodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    _emit(out, cfg)
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    q = _need_q(cfg)
    _emit({"q": q, "track_size": 2 * q + 1, "upper_bound": codes.track_upper_bound(q),
           "elliptic_size": codes.elliptic_track_size(q), "dodunekov": codes.dodunekov_bound(5, q)}, cfg)
    return EXIT_OK


def report_rows(qmax: int, threads: int = 1) -> list[dict]:
    rows = []
    for q in admissible_qs(qmax):
        S = construct.build_track(q).full
        tr = verify.is_track(S, threads=threads)
        complete = verify.addable_points(S, threads=threads, check=False).is_complete if tr.is_track else False
        spec = codes.code_parameters(S) if tr.is_track else None
        rows.append({
            "q": q,
            "size": len(S),
            "is_track": tr.is_track,
            "is_complete": complete,
            "d": spec.d if spec else None,
            "dual_d": spec.dual_d if spec else None,
            "upper_bound": codes.track_upper_bound(q),
            "elliptic_size": codes.elliptic_track_size(q),
        })
    return rows


def format_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in rows:
        w.writerow([str(r[c]).lower() if isinstance(r[c], bool) else r[c] for c in REPORT_COLUMNS])
    return buf.getvalue()


def cmd_report(cfg: RunConfig) -> int:
    if cfg.qmax is None:
        raise InputError("report needs --qmax")
    rows = report_rows(cfg.qmax, cfg.threads)
    text = format_csv(rows)
    if cfg.output:
        try:
            cfg.output.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {cfg.output}: {exc}") from exc
        if cfg.figure and rows:
            from .plotting import size_figure

            size_figure(rows, cfg.output.with_suffix(".png"))
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r["is_track"] and r["is_complete"] for r in rows) else EXIT_VIOLATION


COMMANDS = {
    "construct": (cmd_construct, "build N, V or the track N u V and write it as JSON"),
    "verify": (cmd_verify, "check the track property and completeness"),
    "complete": (cmd_complete, "list the points that can be added to a track"),
    "cover": (cmd_cover, "constructive plane through one affine point"),
    "cover-gap": (cmd_cover_gap, "affine points missed by planes through two points at infinity"),
    "curve": (cmd_curve, "point counts on v^2 = 3F(u)"),
    "code": (cmd_code, "parameters of the code with the track as parity-check columns"),
    "bounds": (cmd_bounds, "size bounds for tracks and NMDS codes"),
    "report": (cmd_report, "CSV summary (and figure) over admissible q"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pg4track", description="Tracks in PG(4,q) with no four points on a plane")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--q", type=int)
        p.add_argument("--qmax", type=int)
        p.add_argument("--input", type=Path)
        p.add_argument("--output", type=Path)
        p.add_argument("--force", action="store_true", help="build even when 3 is a square")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--sample", type=int)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--exhaustive", action="store_true")
        p.add_argument("--point", type=_parse_point, metavar="a,b,c,d")
        if name == "construct":
            p.add_argument("--family", choices=("N", "V", "track"), default="track")
        if name == "cover-gap":
            p.add_argument("--planes", choices=("VV", "VVN"), default="VV",
                           help="VV: two points of V; VVN: two points of V u {(0,0,0,0,1)}")
        if name in ("report", "curve"):
            p.add_argument("--no-figure", dest="figure", action="store_false")
    return ap


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command][0](cfg)
    except construct.HypothesisError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (InputError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
