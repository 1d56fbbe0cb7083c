"""Command-line interface: ``ndpmatch {match,compare,bench}``.

Exit codes: 0 success, 1 usage error, 2 data error (bad pattern, unreadable
or malformed input, symbol outside the alphabet).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import bench, kernel
from .distance import Alphabet, AlphabetError, Metric
from .ingest import IngestError, RankedSequence, read_fasta, read_plain, read_series_csv, sax_symbolize
from .matcher import greedy_leftmost, net_ndp, netlap_variant
from .nettree import NodeEdgeStats
from .oracle import OracleTooLarge, enumerate_all, max_nonoverlapping
from .pattern import PatternError, parse_pattern
from .report import MatchReport, OccurrenceSet

log = logging.getLogger("ndpmatch")

ALGORITHMS = ("netndp", "netndp-nonp", "netlap", "greedy", "enumerate")

MATCH_CSV_COLUMNS = ["source_id", "algorithm", "pattern", "delta", "gamma", "metric",
                     "occ_index", "positions", "gdist", "deviations", "max_deviation",
                     "flagged", "total_nodes", "total_edges", "pruned_nodes", "pruned_edges"]
COMPARE_CSV_COLUMNS = ["pattern", "sequence", "algorithm", "occ_count", "elapsed_ms",
                       "total_nodes", "total_edges"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _add_input_args(ap):
    g = ap.add_argument_group("input")
    g.add_argument("--input", "-i", action="append", default=[], metavar="PATH",
                   help="sequence file (repeatable)")
    g.add_argument("--sequence", "-s", action="append", default=[], metavar="TEXT",
                   help="literal sequence (repeatable)")
    g.add_argument("--format", choices=["fasta", "plain", "csv"],
                   help="input format; default guessed from the file extension")
    g.add_argument("--column", default="0", help="CSV column name or 0-based index")
    g.add_argument("--paa-segments", type=int, default=None,
                   help="SAX frames; default is the series length (no compression)")
    g.add_argument("--sax-alphabet-size", type=int, default=20,
                   help="SAX alphabet size, symbols A.. (default 20, A-T)")
    g.add_argument("--alphabet", metavar="SYMBOLS",
                   help="ordered alphabet, e.g. ABCDEFGHIJKLMNOPQRST")
    g.add_argument("--alphabet-file", metavar="PATH",
                   help="file whose first line is the ordered alphabet")
    g.add_argument("--lenient", action="store_true",
                   help="symbols outside the alphabet never match instead of failing")


def _add_threshold_args(ap):
    ap.add_argument("--delta", type=_nonneg, required=True, help="local threshold")
    ap.add_argument("--gamma", type=_nonneg, required=True,
                    help="global threshold (the Hamming bound h when --metric hamming)")
    ap.add_argument("--metric", choices=["ordinal", "hamming"], default="ordinal")
    ap.add_argument("--engine", choices=["kernel", "python", "tree"], default="kernel",
                    help="NetNDP implementation (default: compiled kernel if built)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ndpmatch", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    m = sub.add_parser("match", help="run one algorithm on each input sequence")
    m.add_argument("--pattern", "-p", required=True)
    _add_threshold_args(m)
    _add_input_args(m)
    m.add_argument("--algorithm", choices=ALGORITHMS, default="netndp")
    m.add_argument("--output", choices=["json", "csv", "text"], default="text")
    m.add_argument("--stats", action="store_true", help="include node/edge counts in text output")
    m.add_argument("--out", "-o", metavar="PATH", help="write to PATH instead of stdout")

    c = sub.add_parser("compare", help="run several algorithms on every (pattern, sequence) pair")
    c.add_argument("--pattern", "-p", action="append", required=True, help="repeatable")
    _add_threshold_args(c)
    _add_input_args(c)
    c.add_argument("--algorithms", default="netndp,netndp-nonp,netlap,greedy",
                   help="comma-separated list from: " + ",".join(ALGORITHMS[:4]))
    c.add_argument("--oracle-cap", type=int, default=60,
                   help="add the brute-force maximum for sequences up to this length (0 disables)")
    c.add_argument("--output", choices=["csv", "text", "json"], default="text")
    c.add_argument("--out", "-o", metavar="PATH")

    b = sub.add_parser(
        "bench", help="runtime sweep on synthetic sequences",
        description="Sequences are i.i.d. uniform over the first --alphabet-size "
                    "uppercase letters. Sweep n uses pattern E[0,9]L..E (length 7); "
                    "sweep m uses ELSELSELS prefixes with [0,9] gaps; sweep W uses "
                    "Q[1,W]E[1,W]L[1,W]E[1,W]L[1,W]N.")
    b.add_argument("--sweep", choices=bench.SWEEPS, required=True)
    b.add_argument("--values", help="comma-separated sweep values")
    b.add_argument("--n", type=int, default=20000, help="sequence length for m/W sweeps")
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--delta", type=_nonneg, default=1)
    b.add_argument("--gamma", type=_nonneg, default=3)
    b.add_argument("--alphabet-size", type=int, default=20)
    b.add_argument("--pattern", help="override the pattern for the n sweep")
    b.add_argument("--engine", choices=["kernel", "python", "tree"], default="kernel")
    b.add_argument("--no-timing", action="store_true",
                   help="leave mean_elapsed_ms empty so output is byte-reproducible")
    b.add_argument("--out", "-o", metavar="PATH")
    return ap


# -- input handling ----------------------------------------------------------

def _alphabet(args) -> Optional[Alphabet]:
    if args.alphabet and args.alphabet_file:
        raise UsageError("--alphabet and --alphabet-file are mutually exclusive")
    if args.alphabet:
        return Alphabet.from_string(args.alphabet)
    if args.alphabet_file:
        return Alphabet.from_file(args.alphabet_file)
    return None


def _guess_format(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".fa", ".fasta", ".faa", ".fna", ".fas"):
        return "fasta"
    if suffix == ".csv":
        return "csv"
    return "plain"


def load_sequences(args, patterns: List[str]) -> List[RankedSequence]:
    if not args.input and not args.sequence:
        raise UsageError("give at least one --input or --sequence")
    alphabet = _alphabet(args)
    strict = not args.lenient
    seqs = []
    for k, text in enumerate(args.sequence, start=1):
        alpha = alphabet or Alphabet.infer(text, *patterns)
        seqs.append(RankedSequence.from_text(text, alpha, f"seq{k}", strict))
    for path in args.input:
        fmt = args.format or _guess_format(path)
        if fmt == "fasta":
            seqs.extend(read_fasta(path, alphabet, strict))
        elif fmt == "csv":
            ts = read_series_csv(path, args.column)
            seq = sax_symbolize(ts, args.paa_segments, args.sax_alphabet_size)
            if alphabet is not None and alphabet != seq.alphabet:
                seq = RankedSequence.from_text(seq.symbols, alphabet, seq.source_id, strict)
            seqs.append(RankedSequence(seq.symbols, seq.ranks, seq.alphabet, f"{path}:{ts.label}"))
        else:
            if alphabet is None:
                with open(path, encoding="utf-8") as fh:
                    alpha = Alphabet.infer(fh.read(), *patterns)
            else:
                alpha = alphabet
            seqs.append(read_plain(path, alpha, strict))
    return seqs


def run_algorithm(name: str, s, p, delta, gamma, metric, engine="kernel") -> MatchReport:
    if name == "netndp":
        return net_ndp(s, p, delta, gamma, metric, True, engine)
    if name == "netndp-nonp":
        return net_ndp(s, p, delta, gamma, metric, False, engine)
    if name == "netlap":
        return netlap_variant(s, p, delta, gamma, metric)
    if name == "greedy":
        return greedy_leftmost(s, p, delta, gamma, metric)
    if name == "enumerate":
        t0 = time.perf_counter()
        occs = enumerate_all(s, p, delta, gamma, metric)
        report = MatchReport("enumerate", OccurrenceSet(occs), NodeEdgeStats(),
                             time.perf_counter() - t0,
                             {"pattern": str(p), "delta": delta, "gamma": gamma,
                              "metric": metric.value, "prune": False},
                             deviation_limit=delta if metric is Metric.ORDINAL else 1,
                             source_id=s.source_id)
        return report.attach_deviations(s, p)
    raise UsageError(f"unknown algorithm {name!r}")


# -- output ------------------------------------------------------------------

def _open_out(path):
    if path:
        return open(path, "w", newline="", encoding="utf-8")
    return sys.stdout


def _write_match(reports: List[MatchReport], fmt: str, show_stats: bool, out) -> None:
    if fmt == "json":
        json.dump({"reports": [r.to_dict() for r in reports]}, out, indent=2)
        out.write("\n")
        return
    if fmt == "csv":
        w = csv.DictWriter(out, fieldnames=MATCH_CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in reports:
            d = r.to_dict()
            for k, occ in enumerate(d["occurrences"]):
                devs = [x for x in occ["deviations"] if x is not None]
                w.writerow({
                    "source_id": r.source_id, "algorithm": r.algorithm,
                    "pattern": r.params["pattern"], "delta": r.params["delta"],
                    "gamma": r.params["gamma"], "metric": r.params["metric"],
                    "occ_index": k + 1,
                    "positions": " ".join(map(str, occ["positions"])),
                    "gdist": occ["gdist"],
                    "deviations": " ".join("" if x is None else str(x) for x in occ["deviations"]),
                    "max_deviation": max(devs) if devs else "",
                    "flagged": int(occ["flagged"]),
                    **d["stats"],
                })
        return
    for r in reports:
        label = r.params.get("label", r.params["metric"])
        out.write(f"{r.source_id}\t{r.algorithm}\t{r.params['pattern']}\t"
                  f"delta={r.params['delta']} gamma={r.params['gamma']} metric={label}\t"
                  f"occurrences={r.occ_count}\n")
        flagged = set(r.flagged)
        for k, occ in enumerate(r.occurrences):
            dev = ",".join(map(str, r.deviations[k])) if k < len(r.deviations) else ""
            mark = "  LARGE-DEVIATION" if k in flagged else ""
            out.write(f"  {occ}  gdist={occ.gdist}  dev=[{dev}]{mark}\n")
        if show_stats:
            st = r.stats
            out.write(f"  nodes={st.total_nodes} edges={st.total_edges} "
                      f"pruned_nodes={st.pruned_nodes} pruned_edges={st.pruned_edges} "
                      f"elapsed_ms={r.elapsed * 1000:.3f}\n")


# -- commands ----------------------------------------------------------------

def cmd_match(args) -> int:
    metric = Metric.parse(args.metric)
    seqs = load_sequences(args, [args.pattern])
    reports = []
    for s in seqs:
        p = parse_pattern(args.pattern, s.alphabet)
        reports.append(run_algorithm(args.algorithm, s, p, args.delta, args.gamma, metric, args.engine))
    out = _open_out(args.out)
    try:
        _write_match(reports, args.output, args.stats, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def compare_rows(seqs, patterns, algorithms, delta, gamma, metric, oracle_cap, engine="kernel"):
    rows = []
    for ptext in patterns:
        for s in seqs:
            p = parse_pattern(ptext, s.alphabet)
            for name in algorithms:
                r = run_algorithm(name, s, p, delta, gamma, metric, engine)
                rows.append({"pattern": ptext, "sequence": s.source_id, "algorithm": name,
                             "occ_count": r.occ_count,
                             "elapsed_ms": f"{r.elapsed * 1000:.4f}",
                             "total_nodes": r.stats.total_nodes,
                             "total_edges": r.stats.total_edges})
            if oracle_cap and s.n <= oracle_cap:
                t0 = time.perf_counter()
                try:
                    count, _ = max_nonoverlapping(enumerate_all(s, p, delta, gamma, metric))
                except OracleTooLarge as exc:
                    log.warning("oracle skipped for %s: %s", s.source_id, exc)
                    continue
                rows.append({"pattern": ptext, "sequence": s.source_id, "algorithm": "oracle",
                             "occ_count": count,
                             "elapsed_ms": f"{(time.perf_counter() - t0) * 1000:.4f}",
                             "total_nodes": "", "total_edges": ""})
    return rows


def cmd_compare(args) -> int:
    metric = Metric.parse(args.metric)
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    seqs = load_sequences(args, args.pattern)
    rows = compare_rows(seqs, args.pattern, algorithms, args.delta, args.gamma, metric,
                        args.oracle_cap, args.engine)
    out = _open_out(args.out)
    try:
        if args.output == "csv":
            w = csv.DictWriter(out, fieldnames=COMPARE_CSV_COLUMNS, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        elif args.output == "json":
            json.dump({"rows": rows}, out, indent=2)
            out.write("\n")
        else:
            # pattern x sequence grid, one column per algorithm
            names = list(dict.fromkeys(r["algorithm"] for r in rows))
            cells = {}
            for r in rows:
                cells.setdefault((r["pattern"], r["sequence"]), {})[r["algorithm"]] = r
            out.write("pattern\tsequence\t" + "\t".join(f"{a}(occ/ms)" for a in names) + "\n")
            for (ptext, sid), byalg in cells.items():
                vals = []
                for a in names:
                    r = byalg.get(a)
                    vals.append("-" if r is None else f"{r['occ_count']}/{r['elapsed_ms']}")
                out.write(f"{ptext}\t{sid}\t" + "\t".join(vals) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_bench(args) -> int:
    values = None
    if args.values:
        try:
            values = [int(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"--values must be comma-separated integers: {args.values!r}") from None
    pattern = parse_pattern(args.pattern, Alphabet.upper(args.alphabet_size)) if args.pattern else None
    rows = bench.run_sweep(args.sweep, values, n=args.n, repetitions=args.repetitions,
                           seed=args.seed, delta=args.delta, gamma=args.gamma,
                           alphabet_size=args.alphabet_size, engine=args.engine,
                           pattern=pattern, timing=not args.no_timing)
    out = _open_out(args.out)
    try:
        w = csv.DictWriter(out, fieldnames=bench.COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


COMMANDS = {"match": cmd_match, "compare": cmd_compare, "bench": cmd_bench}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command is None:
        ap.print_usage(sys.stderr)
        return 1
    log.debug("kernel backend: %s", kernel.BACKEND)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ndpmatch: usage error: {exc}", file=sys.stderr)
        return 1
    except (PatternError, IngestError, AlphabetError, OracleTooLarge, OSError, ValueError) as exc:
        print(f"ndpmatch: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
