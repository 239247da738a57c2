from lib import errors as er
from lib import field2 as f2
from lib import laurent as lr
from lib import valuation as vl
from lib import basechange as bc
from lib import homalg as ha
from lib import ideals as idl
from lib import invariants as inv
from lib import catalog
from lib import file_manager as fm
from lib import log_manager as lm
from lib import report_manager as rm
import argparse, json, time, os, sys

class ConcordiaApp:
    def __init__(self, data_folder=None, report_folder=None, log_folder=None, samples=None, bisection_depth=4, workers=4, max_power=3):
        self.client_file = fm.FileManager(data_folder=data_folder)
        self.client_report = rm.ReportManager(report_folder=report_folder)
        self.log_folder = log_folder
        self.samples = samples or []
        self.bisection_depth = bisection_depth
        self.workers = workers
        self.max_power = max_power

        self.client_log = None
        self.log_file = None

    def emit(self, lines):
        for line in lines:
            print(line)

    def start_log(self, command):
        if self.log_folder:
            self.client_log = lm.LogManager(command=command, log_folder=self.log_folder)
            self.log_file = self.client_log.create_log_file()

    def log(self, data):
        if self.client_log is not None:
            self.client_log.update_log_file(file=self.log_file, data={
                "timestamp": int(time.time()),
                "result": data
            })

    def finish_log(self):
        if self.client_log is not None:
            self.client_log.save_log_file(file=self.log_file)
            self.client_log = None

    def load_knot(self, args):
        if getattr(args, "stdin", False):
            return self.client_file.read_knot_text(sys.stdin.read())
        if getattr(args, "file", None):
            return self.client_file.read_knot_file(args.file)
        if getattr(args, "knot", None):
            return catalog.knot(args.knot)
        raise er.MissingParameter("choose a knot with --knot, --file or --stdin")

    def write_out(self, args, document):
        if getattr(args, "out", None):
            self.client_report.save_report(args.out, document)

    def request_eval(self, args):
        sigma = base_change_from_args(args)
        value = bc.apply(sigma, lr.parse(args.element, args.ring))
        lines = [f2.format_rf(value)]
        if args.ord:
            lines.append(f"ord = {vl.format_value(vl.ord_rf(value, sigma.weight) if value else None)}")
        if args.leading:
            for name, form in bc.leading_terms(sigma).items():
                lines.append(f"leading sigma({name}) = {f2.format_rf(form) if form is not None else '0'}")
        self.log({"command": "eval", "base_change": sigma.label(), "element": args.element, "value": lines[0]})
        self.emit(lines)

    def request_invariants(self, args):
        K = self.load_knot(args)
        sigma = base_change_from_args(args)
        profile = None
        if args.samples:
            profile = inv.f_profile(K, parse_samples(args.samples), self.bisection_depth, self.workers)
        report = inv.bounds(K, sigma, args.g_max, args.d_max, self.max_power, profile)
        body = report.to_dict()
        lines = report.lines()
        if args.compare_power is not None:
            matched = inv.matches_power(K, args.compare_power)
            body["matches_power"] = {str(args.compare_power): matched}
            lines.append(f"presented znat = J^{args.compare_power}: {str(matched).lower()}")
        self.log({"command": "invariants", "report": body})
        self.write_out(args, self.client_report.build_report("invariants", body))
        if args.json:
            self.emit([json.dumps(body, indent=4)])
        else:
            self.emit(lines)

    def request_profile(self, args):
        K = self.load_knot(args)
        samples = parse_samples(args.samples) if args.samples else self.samples
        profile = inv.f_profile(K, samples, args.depth if args.depth is not None else self.bisection_depth,
                                args.workers if args.workers is not None else self.workers)
        body = profile.to_dict()
        self.log({"command": "profile", "profile": body})
        if args.csv:
            self.client_file.save_profile_csv(args.csv, profile.samples)
        self.write_out(args, self.client_report.build_profile(body))
        if args.json:
            self.emit([json.dumps(body, indent=4)])
            return
        lines = [f"r = {r}: f_r = {vl.format_value(f)}" for r, f in profile.samples]
        lines.extend(s.describe() for s in profile.segments)
        lines.extend(f"breakpoint r = {b}" for b in profile.breakpoints)
        lines.extend(f"unresolved ({a}, {b})" for a, b in profile.unresolved)
        lines.append(f"slope bound {profile.slope_bound} (heuristic): {'ok' if profile.slope_within_bound else 'exceeded'}")
        self.emit(lines)

    def request_sum(self, args):
        names = [name.strip() for name in args.knots.split(",") if name.strip()]
        K = inv.connected_sum_all(catalog.knot(name) for name in names)
        sigma = base_change_from_args(args)
        value = inv.f_sigma(K, sigma)
        self.log({"command": "sum", "knot": K.name, "base_change": sigma.label(), "f": vl.format_value(value)})
        if args.json:
            self.emit([self.client_file.knot_to_text(K)])
        else:
            label = "f_r" if sigma.name == "B" else "f"
            self.emit([f"knot = {K.name}", f"base change = {sigma.label()}", f"{label} = {vl.format_value(value)}"])

    def request_membership(self, args):
        I = idl.parse_ideal(args.ideal, args.ring)
        value = idl.membership(args.element, I)
        self.log({"command": "membership", "ring": args.ring, "ideal": args.ideal, "element": args.element, "member": value})
        self.emit(["true" if value else "false"])

    def request_g_region(self, args):
        I = idl.parse_ideal(args.ideal, args.ring)
        region = idl.g_region(I, args.g_max, args.d_max)
        closed = idl.smoothing_closed(region, args.g_max)
        self.log({"command": "g-region", "ideal": args.ideal, "region": [list(p) for p in region], "smoothing_closed": closed})
        if args.json:
            self.emit([json.dumps({"ideal": idl.format_ideal(I), "region": [list(p) for p in region],
                                   "smoothing_closed": closed}, indent=4)])
            return
        members = set(region)
        lines = []
        for d in range(args.d_max, -1, -1):
            row = " ".join("#" if (g, d) in members else "." for g in range(args.g_max + 1))
            lines.append(f"d={d} {row}")
        lines.append(f"smoothing closed: {'true' if closed else 'false'}")
        self.emit(lines)

    def request_unknotting_bound(self, args):
        K = self.load_knot(args)
        sigma = base_change_from_args(args)
        xi = lr.parse(args.xi, K.ring) if args.xi else None
        bound = inv.unknotting_bound(K, sigma, args.max_power if args.max_power is not None else self.max_power, xi)
        lines = [
            f"tau = {vl.format_value(bound.tau)}",
            f"lambda = {vl.format_value(bound.lam)}",
            f"unknotting number >= {vl.format_value(bound.value)} ({bound.label})",
        ]
        for n, passed in bound.annihilation.items():
            lines.append(f"J^{n} annihilates torsion: {'unsupported' if passed is None else str(passed).lower()}")
        self.log({"command": "unknotting-bound", "knot": K.name, "lines": lines})
        self.emit(lines)

    def request_catalog(self, args):
        if args.action == "list":
            lines = [f"{name}: {note}{' (conjecture)' if conjecture else ''}" for name, note, conjecture in catalog.list_entries()]
            if args.dir:
                if not os.path.isdir(args.dir):
                    raise er.UsageError(f"--dir {args.dir!r} is not a folder")
                for file in self.client_file.get_files(args.dir):
                    lines.append(f"{os.path.basename(file)}: {self.client_file.read_knot_file(file).name} (file)")
            self.emit(lines)
            return
        if not args.name:
            raise er.MissingParameter("catalog show needs a knot name")
        entry = catalog.get(args.name)
        if args.json:
            if entry.model is not None:
                self.emit([self.client_file.knot_to_text(entry.model)])
            elif entry.complex is not None:
                self.emit([json.dumps(ha.complex_to_json(entry.complex), indent=4)])
            else:
                self.emit([json.dumps({"name": entry.name, "expected_ideal": idl.format_ideal(entry.expected_ideal)}, indent=4)])
            return
        lines = [f"name = {entry.name}"]
        if entry.expected_ideal is not None:
            lines.append(f"expected ideal = {idl.format_ideal(entry.expected_ideal)}")
        if entry.complex is not None:
            for k in entry.complex.degrees:
                lines.append(f"C^{k} rank {entry.complex.rank(k)}")
        lines.extend(f"source: {note}" for note in entry.provenance)
        if entry.conjecture:
            lines.append("conjecture: true")
        self.emit(lines)

    def request_verify(self, args):
        rows = catalog.verify(include_conjectures=True)
        hard = [r for r in rows if not r.conjecture]
        pins = [r for r in rows if r.conjecture]
        document = self.client_report.build_verify([vars(r) for r in hard], [vars(r) for r in pins])
        self.log({"command": "verify", "passed": document["passed"], "failed": document["failed"]})
        self.write_out(args, document)
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.label}: {r.computed} (expected {r.expected})" for r in hard]
        lines.append(f"{document['passed']} passed, {document['failed']} failed")
        lines.extend(f"{'PASS' if r.passed else 'FAIL'}  [conjecture] {r.label}: {r.computed}" for r in pins)
        self.emit(lines)
        return 0 if document["failed"] == 0 else 1

    def request(self, args):
        if args.command == "eval":
            return self.request_eval(args)
        elif args.command == "invariants":
            return self.request_invariants(args)
        elif args.command == "profile":
            return self.request_profile(args)
        elif args.command == "sum":
            return self.request_sum(args)
        elif args.command == "membership":
            return self.request_membership(args)
        elif args.command == "g-region":
            return self.request_g_region(args)
        elif args.command == "unknotting-bound":
            return self.request_unknotting_bound(args)
        elif args.command == "catalog":
            return self.request_catalog(args)
        elif args.command == "verify":
            return self.request_verify(args)
        else:
            raise er.ParseError(f"unknown command {args.command}")


def parse_samples(text: str):
    """``1/8,1/4,1`` or ``1/8..1`` (steps of the start) or ``1/8..1:1/16``."""
    text = text.strip()
    if ".." not in text:
        return [vl.parse_rational(part) for part in text.split(",") if part.strip()]
    start, rest = text.split("..", 1)
    stop, _, step = rest.partition(":")
    start, stop = vl.parse_rational(start), vl.parse_rational(stop)
    step = vl.parse_rational(step) if step else start
    if step <= 0:
        raise er.ParseError("sample step must be positive")
    samples, r = [], start
    while r <= stop:
        samples.append(r)
        r += step
    return samples


def parse_pairs(values, flag):
    pairs = {}
    for pair in values or []:
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise er.UsageError(f"{flag} expects NAME=VALUE, got {pair!r}")
        pairs[name.strip()] = value.strip()
    return pairs


def base_change_from_args(args):
    r = vl.parse_rational(args.r) if getattr(args, "r", None) else None
    if getattr(args, "example", None):
        return bc.builtin(args.example, r)
    if getattr(args, "subst", None):
        substs = parse_pairs(args.subst, "--subst")
        weights = {name: vl.parse_rational(w) for name, w in parse_pairs(args.weight, "--weight").items()}
        lex = tuple(args.lex.split(",")) if args.lex else None
        return bc.custom(substs, weights, lex, degenerate=args.degenerate)
    raise er.MissingParameter("choose a base change with --example or --subst")


def add_base_change_flags(parser):
    parser.add_argument("--example", choices=bc.BUILTIN_NAMES)
    parser.add_argument("--r")
    parser.add_argument("--subst", action="append", help="custom image, e.g. T1=1+y")
    parser.add_argument("--weight", action="append", help="valuation weight, e.g. y=1/4")
    parser.add_argument("--lex", help="two variables spanning a lexicographic value group")
    parser.add_argument("--degenerate", action="store_true")


def add_knot_flags(parser):
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--knot")
    source.add_argument("--file")
    source.add_argument("--stdin", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="concordia")
    parser.add_argument("--log-dir")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval")
    add_base_change_flags(p)
    p.add_argument("--element", required=True)
    p.add_argument("--ring", choices=lr.RINGS, default=lr.FULL)
    p.add_argument("--ord", action="store_true")
    p.add_argument("--leading", action="store_true")

    p = commands.add_parser("invariants")
    add_knot_flags(p)
    add_base_change_flags(p)
    p.add_argument("--samples")
    p.add_argument("--g-max", "--gmax", type=int, default=3)
    p.add_argument("--d-max", "--dmax", type=int, default=3)
    p.add_argument("--compare-power", type=int, help="compare the presented ideal with J^n")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")

    p = commands.add_parser("profile")
    add_knot_flags(p)
    p.add_argument("--samples")
    p.add_argument("--depth", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")

    p = commands.add_parser("sum")
    p.add_argument("--knots", required=True)
    add_base_change_flags(p)
    p.add_argument("--json", action="store_true")

    p = commands.add_parser("membership")
    p.add_argument("--ring", choices=lr.RINGS, default=lr.FULL)
    p.add_argument("--ideal", required=True)
    p.add_argument("--element", required=True)

    p = commands.add_parser("g-region")
    p.add_argument("--ring", choices=lr.RINGS, default=lr.FULL)
    p.add_argument("--ideal", required=True)
    p.add_argument("--g-max", "--gmax", type=int, default=2)
    p.add_argument("--d-max", "--dmax", type=int, default=2)
    p.add_argument("--json", action="store_true")

    p = commands.add_parser("unknotting-bound")
    add_knot_flags(p)
    add_base_change_flags(p)
    p.add_argument("--max-power", type=int)
    p.add_argument("--xi", help="twist V to xi*P + T0^2 + T0^-2 (FULL models)")

    p = commands.add_parser("catalog")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dir", help="also list the knot files in this folder")

    p = commands.add_parser("verify")
    p.add_argument("--out")
    return parser


def get_resource_path(relative_path):
    if getattr(sys, 'frozen', False):
        # PyInstaller EXE
        base_path = os.path.dirname(sys.executable)
    else:
        # DEVELOP
        base_path = os.path.dirname(os.path.abspath(__file__))

    return os.path.join(base_path, relative_path)

DEFAULT_CONFIG = {
    "groebner": {"max_degree": idl.GB_MAX_DEGREE},
    "profile": {"samples": ["1/8", "1/4", "1/3", "1/2", "2/3", "1"], "bisection_depth": 4, "workers": 4},
    "unknotting": {"max_power": 3},
    "dir": {"log": None, "reports": "."}
}

def get_app_config():
    try:
        with open(get_resource_path('concordia-config.json'), 'r', encoding='utf-8') as file:
            config_content = json.load(file)
        return config_content
    except Exception as e:
        print(f"Exception in get_app_config: {e}", file=sys.stderr)
        return DEFAULT_CONFIG

app_config = get_app_config()

GB_MAX_DEGREE = app_config.get("groebner", DEFAULT_CONFIG["groebner"])["max_degree"]
PROFILE_SAMPLES = [vl.parse_rational(r) for r in app_config.get("profile", DEFAULT_CONFIG["profile"])["samples"]]
BISECTION_DEPTH = app_config.get("profile", DEFAULT_CONFIG["profile"])["bisection_depth"]
WORKERS = app_config.get("profile", DEFAULT_CONFIG["profile"])["workers"]
MAX_POWER = app_config.get("unknotting", DEFAULT_CONFIG["unknotting"])["max_power"]
LOG_FOLDER = app_config.get("dir", DEFAULT_CONFIG["dir"])["log"]
REPORT_FOLDER = app_config.get("dir", DEFAULT_CONFIG["dir"])["reports"]

idl.GB_MAX_DEGREE = GB_MAX_DEGREE


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    app = ConcordiaApp(report_folder=REPORT_FOLDER, log_folder=args.log_dir or LOG_FOLDER, samples=PROFILE_SAMPLES,
                       bisection_depth=BISECTION_DEPTH, workers=WORKERS, max_power=MAX_POWER)
    try:
        app.start_log(args.command)
        status = app.request(args)
        return status or 0
    except er.UsageError as e:
        print(f"Exception in {args.command} -> {e.name}: {e}", file=sys.stderr)
        return 2
    except er.ConcordiaError as e:
        print(f"Exception in {args.command} -> {e.name}: {e}", file=sys.stderr)
        return 1
    finally:
        app.finish_log()


if __name__ == "__main__":
    sys.exit(run())
