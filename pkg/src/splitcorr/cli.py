"""Command-line entry point: ``splitcorr <command> ...``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage error.  JSON is the default output; integers that can grow without
bound are written as decimal strings.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import correspondence as corr
from . import covering, dimensions, hamming, tridiag
from .exactalg import fraction_str, integer_roots

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _poly_json(p):
    return [str(c) for c in p.coeffs]


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


# -- report ---------------------------------------------------------------------


@dataclass
class Record:
    n: int
    name: str
    anchor: str
    status: str
    detail: str = ""

    def to_json(self):
        return {"n": self.n, "name": self.name, "anchor": self.anchor, "status": self.status, "detail": self.detail}


@dataclass
class Report:
    command: list
    n_range: tuple
    records: list

    @property
    def ok(self):
        return not any(r.status == "fail" for r in self.records)

    def sorted(self):
        return sorted(self.records, key=lambda r: (r.n, r.name))

    def to_json(self):
        return {
            "command": self.command,
            "n_range": list(self.n_range),
            "status": "pass" if self.ok else "fail",
            "counts": {s: sum(r.status == s for r in self.records) for s in ("pass", "fail", "skipped")},
            "checks": [r.to_json() for r in self.sorted()],
        }

    def render(self, fmt):
        if fmt == "json":
            return _dump(self.to_json())
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["n", "name", "anchor", "status", "detail"])
            for r in self.sorted():
                w.writerow([r.n, r.name, r.anchor, r.status, r.detail])
            return buf.getvalue().rstrip("\n")
        lines = [f"{r.status.upper():7} n={r.n:<3} {r.name:55} {r.detail}" for r in self.sorted()]
        counts = self.to_json()["counts"]
        lines.append(f"overall: {'pass' if self.ok else 'fail'} "
                     f"({counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped)")
        return "\n".join(lines)


def _from_checks(n, checks, anchor):
    return [Record(n, c.name, anchor, c.status, c.detail) for c in checks]


# -- verification suites ----------------------------------------------------------


def _suite_odd(n):
    if n % 2 == 0 or n < 3:
        return []
    return _from_checks(n, corr.verify_split(n).checks, "odd-splitting")


def _suite_even(n):
    if n % 2 or n < 4:
        return []
    return _from_checks(n, corr.verify_split(n).checks, "even-splitting")


def _brute_character_sum(n, k, ell):
    x = (1 << ell) - 1
    return sum((-1) ** bin(x & y).count("1") for y in range(1 << n) if bin(y).count("1") == k)


def _suite_hamming(n):
    out = []
    if n <= 12:
        bad = [(k, l) for k in range(n + 1) for l in range(n + 1)
               if hamming.krawtchouk(n, k, l) != _brute_character_sum(n, k, l)]
        out.append(Record(n, "hamming.krawtchouk_vs_character_sum", "krawtchouk-eigenvalues",
                          "fail" if bad else "pass", f"mismatches {bad[:3]}" if bad else "all (k, l)"))
    else:
        out.append(Record(n, "hamming.krawtchouk_vs_character_sum", "krawtchouk-eigenvalues",
                          "skipped", "brute force limited to n <= 12"))
    k = n - 1 if n % 2 else n - 2
    names = ("+", "-", "e", "o") if n % 2 else hamming.SUBSPACES
    for name in names:
        table = hamming.subspace_spectrum(n, k, name)
        rank = hamming.subspace_dimension(n, name)
        out.append(Record(n, f"hamming.dimension[{name}]", "subspace-tables",
                          "pass" if rank == table.dimension else "fail", f"rank {rank}, table {table.dimension}"))
        got = hamming.restricted_char_and_min_poly(n, k, name)
        want = hamming.char_and_min_poly(n, k, name)
        out.append(Record(n, f"hamming.spectrum[{name}]", "subspace-tables",
                          "pass" if got == want else "fail", f"charpoly {got[0]}"))
    return out


def _suite_dims(n):
    if not 3 <= n <= 10:
        return []
    table = dimensions.dim_table(n)
    out = _from_checks(n, dimensions.dim_consistency(n, table), "dimension-table")
    keys_ok = sorted(table.entries) == dimensions.spectrum_keys(n)
    out.append(Record(n, "dims.keys_match_spectrum", "dimension-table", "pass" if keys_ok else "fail"))
    if n % 2:
        same = dimensions.rederive_odd(n).entries == table.entries
        out.append(Record(n, "dims.trace_rederivation", "trace-rederivation", "pass" if same else "fail"))
    return out


def _suite_tridiag(n):
    if n % 2 == 0 or n < 3:
        return []
    det = tridiag.cnplus(n)
    routes = {"product": tridiag.cnplus_product(n), "operator_charpoly": tridiag.cnplus_operator_charpoly(n),
              "explicit_matrix": tridiag.cnplus_brute(n)}
    return [Record(n, f"tridiag.determinant_vs_{name}", "tridiagonal-factorization",
                   "pass" if det == p else "fail", str(det)) for name, p in routes.items()]


COVERING_MAX_N = 8
COVERING_SEEDS = 3


def _suite_covering(n):
    if n < 3:
        return []
    if n > COVERING_MAX_N:
        return [Record(n, "covering.genus", "covering-genus", "skipped", f"sweep limited to n <= {COVERING_MAX_N}")]
    out = []
    for seed in range(COVERING_SEEDS):
        gy = seed % 2
        data = covering.random_simple_monodromy(n, 2 * n, gy, seed)
        rep = covering.ramification_and_genus(data)
        cyc = all(c == 2 ** (n - 2) for c in rep.two_cycles_per_branch)
        out.append(Record(n, f"covering.two_cycles[seed={seed}]", "covering-genus", "pass" if cyc else "fail",
                          str(sorted(set(rep.two_cycles_per_branch)))))
        out.append(Record(n, f"covering.genus[seed={seed}]", "covering-genus",
                          "pass" if rep.consistent() else "fail",
                          f"g_X={rep.g_X} components={list(rep.component_genera)} formula={rep.closed_form}"))
    return out


SUITES = {
    "odd": _suite_odd,
    "even": _suite_even,
    "hamming": _suite_hamming,
    "dims": _suite_dims,
    "tridiag": _suite_tridiag,
    "covering": _suite_covering,
}


def run_verify(n_from, n_to, suite, command=()):
    if n_from > n_to or n_from < 1:
        raise UsageError(f"bad range {n_from}..{n_to}")
    names = list(SUITES) if suite == "all" else [suite]
    records = []
    for n in range(n_from, n_to + 1):
        for name in names:
            records.extend(SUITES[name](n))
    return Report(list(command), (n_from, n_to), records)


# -- commands ---------------------------------------------------------------------


def cmd_krawtchouk(args):
    n, k = args.n, args.k
    if args.ell is not None:
        value = hamming.krawtchouk(n, k, args.ell)
        return {"n": n, "k": k, "ell": args.ell, "value": str(value)}, [[n, k, args.ell, value]]
    values = [hamming.krawtchouk(n, k, l) for l in range(n + 1)]
    return {"n": n, "k": k, "values": [str(v) for v in values]}, [[n, k, l, v] for l, v in enumerate(values)]


def cmd_equation(args):
    n = args.n
    comp = args.component or ("odd" if n % 2 else None)
    if n % 2:
        if comp != "odd" or args.sigma:
            raise UsageError("odd n has a single equation (--component odd)")
        eq, prod = corr.odd_equation(n), corr.theorem1_product(n)
        return {"n": n, "component": "odd", "coefficients": _poly_json(eq),
                "roots": [str(r) for r in integer_roots(prod)], "matches_product": eq == prod}
    if args.sigma:
        if n < 6:
            raise UsageError("the equation in T and s needs n >= 6")
        sig = corr.even_sigma_equation(n)
        out = {"n": n, "sigma_coefficients": sig.to_json()}
        if n % 4 == 0:
            out["extra_root_at_minus_one"] = str(corr.dropped_root(sig, n))
        return out
    if comp not in ("B", "P"):
        raise UsageError("even n needs --component B or --component P")
    b_prod, p_prod = corr.theorem2_products(n)
    prod = b_prod if comp == "B" else p_prod
    out = {"n": n, "component": comp, "product": _poly_json(prod), "roots": [str(r) for r in integer_roots(prod)]}
    if n >= 6:
        eq = corr.B_equation(n) if comp == "B" else corr.P_equation(n)
        out["coefficients"] = _poly_json(eq)
        out["matches_product"] = eq == prod
    else:
        out["coefficients"] = _poly_json(prod)
    return out


def cmd_spectrum(args):
    spec = hamming.subspace_spectrum(args.n, args.k, args.subspace)
    char, mini = hamming.char_and_min_poly(args.n, args.k, args.subspace)
    op_char, op_min = hamming.restricted_char_and_min_poly(args.n, args.k, args.subspace)
    return {
        "n": args.n, "k": args.k, "subspace": spec.name, "dimension": spec.dimension,
        "eigenvectors": [{"index": l, "eigenvalue": str(lam)} for l, lam in spec.eigen_list],
        "charpoly": _poly_json(char), "minpoly": _poly_json(mini),
        "operator_agrees": (op_char, op_min) == (char, mini),
    }


def cmd_dims(args):
    table = dimensions.dim_table(args.n)
    numeric = args.gx is not None or args.gy is not None
    if numeric and (args.gx is None or args.gy is None or args.symbolic):
        raise UsageError("give both --gx and --gy, or --symbolic")
    rows = []
    if numeric:
        dims = {}
        for (c, lam), v in table.entries.items():
            val = v.evaluate(args.gx, args.gy)
            dims[table.label(c, lam)] = fraction_str(val)
            rows.append([args.n, c, lam, fraction_str(val)])
        out = {"n": args.n, "g_X": args.gx, "g_Y": args.gy, "dimensions": dims}
    else:
        out = {"n": args.n, "dimensions": table.to_json()}
        rows = [[args.n, c, lam, str(v)] for (c, lam), v in sorted(table.entries.items())]
    if table.extra:
        out["extra"] = {table.label(*k): v.to_json() for k, v in table.extra.items()}
    checks = dimensions.dim_consistency(args.n, table)
    out["checks_pass"] = all(c.passed for c in checks)
    return out, rows


def cmd_covering(args):
    data = covering.random_simple_monodromy(args.n, args.branches, args.genus_y, args.seed)
    counts = covering.component_counts(data)
    rep = covering.ramification_and_genus(data)
    return {
        "instance": data.to_json(),
        "counts": {"orbits_on_strands": counts.orbits_on_strands, "orbits_on_liftings": counts.orbits_on_liftings,
                   "orbits_even": counts.orbits_even, "orbits_odd": counts.orbits_odd},
        "g_X": str(rep.g_X),
        "two_cycles_per_branch": [str(c) for c in rep.two_cycles_per_branch],
        "component_genera": [str(g) for g in rep.component_genera],
        "closed_form_genus": None if rep.closed_form is None else str(rep.closed_form),
        "consistent": rep.consistent(),
    }


def cmd_tridiag(args):
    n = args.n
    det = tridiag.cnplus(n)
    prod = tridiag.cnplus_product(n)
    op = tridiag.cnplus_operator_charpoly(n)
    return {"n": n, "determinant": _poly_json(det), "roots": [str(r) for r in integer_roots(prod)],
            "matches_product": det == prod, "matches_operator": det == op}


# -- parser -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="splitcorr", description="Exact checks for distance-transform correspondences.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("krawtchouk", help="eigenvalue of the distance-k transform")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int)
    s.add_argument("--format", choices=("json", "csv", "text"), default="json")

    s = sub.add_parser("equation", help="split equation of the fiber correspondence")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--component", choices=("B", "P", "odd"))
    s.add_argument("--sigma", action="store_true", help="print the equation in T and s (even n >= 6)")

    s = sub.add_parser("spectrum", help="spectrum on an invariant subspace")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--subspace", choices=hamming.SUBSPACES, required=True,
                   help="write signed names as --subspace=-e")

    s = sub.add_parser("dims", help="dimension table for 3 <= n <= 10")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gx", type=int)
    s.add_argument("--gy", type=int)
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--format", choices=("json", "csv", "text"), default="json")

    s = sub.add_parser("covering", help="random monodromy instance with genus checks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--branches", type=int, required=True)
    s.add_argument("--genus-y", type=int, default=0)
    s.add_argument("--seed", type=int, required=True)

    s = sub.add_parser("tridiag", help="tridiagonal determinant for odd n")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("verify", help="run a verification sweep")
    s.add_argument("--n-from", type=int, required=True)
    s.add_argument("--n-to", type=int, required=True)
    s.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    s.add_argument("--format", choices=("json", "csv", "text"), default="json")
    return p


def _render_flat(obj, rows, fmt, header):
    if fmt == "json":
        return _dump(obj)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return "\n".join("  ".join(str(c) for c in row) for row in rows)


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            report = run_verify(args.n_from, args.n_to, args.suite, ["verify", *argv[1:]])
            print(report.render(args.format))
            return EXIT_OK if report.ok else EXIT_FAIL
        if args.command == "krawtchouk":
            obj, rows = cmd_krawtchouk(args)
            print(_render_flat(obj, rows, args.format, ["n", "k", "ell", "value"]))
            return EXIT_OK
        if args.command == "dims":
            obj, rows = cmd_dims(args)
            print(_render_flat(obj, rows, args.format, ["n", "component", "eigenvalue", "dimension"]))
            return EXIT_OK if obj["checks_pass"] else EXIT_FAIL
        handler = {"equation": cmd_equation, "spectrum": cmd_spectrum,
                   "covering": cmd_covering, "tridiag": cmd_tridiag}[args.command]
        obj = handler(args)
        print(_dump(obj))
        flags = [v for key, v in obj.items() if key.startswith("matches") or key in ("consistent", "operator_agrees")]
        return EXIT_OK if all(flags) else EXIT_FAIL
    except (UsageError, ValueError) as exc:
        print(f"splitcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except covering.NoInstanceFound as exc:
        print(f"splitcorr: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run())
