"""Command-line front end.

Subcommands cover the full pipeline: Stark-shift sweeps, phonon-site
modes, effective-interaction maps, Hubbard parameter sweeps, binding
thresholds, pair dispersions, the exact-diagonalization oracle, and the
phase map.  Output is deterministic: CSV tables (or JSON records) with
no embedded timestamps; when writing to a directory, a manifest lists
every file with its SHA-256 digest.
"""

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import yaml

from . import hubbard, lattice, oracle, pairs, phases, rydberg, stark
from .constants import M_K40, M_RB87, nk_to_hz

DEFAULTS = {
    "a": 1.73,          # um, lattice constant
    "r_c_over_a": 0.1,  # soft-core radius in units of a
    "n_B": 0.01,        # pair density for the BKT estimate
    "a_s0": 90.0,       # background scattering length, Bohr radii
    "eta": 6,           # power-law exponent of the dressed interaction
    "n_ryd": 27,        # principal quantum number
    "alpha_bar": 0.004,  # dressing ratio Omega/2Delta
    "w_ph": 0.6,        # um, phonon spot waist
    "D": 0.2823,        # um, phonon spot half-separation
    "V0_ph_scale": 2.5,  # phonon spot depth in units of V0
    "prefactor": 1.0,   # nK, Stark intensity prefactor
    "omega_ratio": 18.52,  # pinned hbar*omega_ph/t for the phase map
}

DEFAULT_NOTES = {
    "a": "fermion lattice constant in micrometres",
    "r_c_over_a": "dressed-interaction soft-core radius relative to a",
    "n_B": "dilute pair density entering the BKT temperature estimate",
    "a_s0": "background s-wave scattering length in Bohr radii",
    "eta": "power-law exponent of the dressed pair potential",
    "n_ryd": "Rydberg principal quantum number (sets C6)",
    "alpha_bar": "Rydberg dressing ratio Omega/(2 Delta)",
    "w_ph": "phonon spot waist in micrometres (design choice)",
    "D": "phonon spot half-separation in micrometres",
    "V0_ph_scale": "phonon spot depth as a multiple of the fermion depth",
    "prefactor": "Stark-shift intensity prefactor in nK",
    "omega_ratio": "pinned phonon quantum in units of the hopping",
}


class OutputSink:
    """Writes named CSV/JSON artifacts to a directory or stdout."""

    def __init__(self, out_dir=None, fmt="csv"):
        self.out_dir = Path(out_dir) if out_dir else None
        self.fmt = fmt
        self.manifest = []
        if self.out_dir:
            self.out_dir.mkdir(parents=True, exist_ok=True)

    def emit_table(self, name, header, rows):
        if self.fmt == "json":
            payload = json.dumps(
                [dict(zip(header, r)) for r in rows], indent=2, sort_keys=True
            ) + "\n"
            ext = "json"
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            for r in rows:
                w.writerow([_fmt_cell(x) for x in r])
            payload = buf.getvalue()
            ext = "csv"
        self._write(f"{name}.{ext}", payload)

    def emit_record(self, name, record):
        payload = json.dumps(record, indent=2, sort_keys=True, default=_jsonable) + "\n"
        self._write(f"{name}.json", payload)

    def _write(self, fname, payload):
        if self.out_dir:
            path = self.out_dir / fname
            path.write_text(payload)
            digest = hashlib.sha256(payload.encode()).hexdigest()
            self.manifest = [m for m in self.manifest if m["file"] != fname]
            self.manifest.append({"file": fname, "sha256": digest})
        else:
            sys.stdout.write(f"# --- {fname} ---\n{payload}")

    def finish(self):
        if self.out_dir and self.manifest:
            manifest = {
                "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                "files": sorted(self.manifest, key=lambda m: m["file"]),
            }
            (self.out_dir / "manifest.json").write_text(
                json.dumps(manifest, indent=2) + "\n"
            )


def _fmt_cell(x):
    if isinstance(x, float):
        if x == 0.0:
            return "0"
        if 1e-3 <= abs(x) < 1e6:
            return f"{x:.10g}"
        return f"{x:.10e}"
    return x


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return str(x)


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise SystemExit(f"config {path}: expected a mapping at top level")
    return data


def _cfg(args, key):
    val = getattr(args, key.replace("-", "_"), None)
    if val is not None:
        return val
    if key in args.config_data:
        return args.config_data[key]
    return DEFAULTS.get(key)


def _make_pattern(name, a, V0_ph, w_ph, D, b=None):
    if name == "holstein":
        return lattice.holstein_reference(a, V0_ph, w_ph, D, b=b)
    if name == "offset-parallel":
        return lattice.offset_parallel(a, V0_ph, w_ph, D, b if b is not None else 0.5 * a * math.sqrt(2.0))
    if name == "offset-parallel-rotated":
        return lattice.offset_parallel_rotated(a, V0_ph, w_ph, D, b if b is not None else 0.5 * a * math.sqrt(2.0))
    if name == "crossed":
        return lattice.crossed(a, V0_ph, w_ph, D)
    if name == "bipartite-parallel":
        return lattice.bipartite_parallel(a, V0_ph, w_ph, D)
    raise SystemExit(f"unknown pattern {name!r}")


def _spec_from_args(args):
    a = _cfg(args, "a")
    eta = _cfg(args, "eta")
    n_ryd = _cfg(args, "n_ryd")
    alpha_bar = _cfg(args, "alpha_bar")
    r_c = _cfg(args, "r_c_over_a") * a
    C6 = rydberg.c6_interpolated(n_ryd)
    return rydberg.RydbergSpec.from_rc(C6=C6, r_c=r_c, alpha_bar=alpha_bar, eta=eta)


# ---------------------------------------------------------------- subcommands

def cmd_stark(args, sink):
    atom = stark.SPECIES.get(args.species)
    if atom is None:
        raise SystemExit(f"unknown species {args.species!r}; choices: {sorted(stark.SPECIES)}")
    cfg = stark.StarkConfig(g_F=args.gf, m_F=args.mf, ellipticity=args.ellipticity,
                            intensity_prefactor=_cfg(args, "prefactor"))
    lo = args.wl_min if args.wl_min else atom.lambda_D2 - 3.0
    hi = args.wl_max if args.wl_max else atom.lambda_D1 + 3.0
    n = args.steps
    rows = []
    for i in range(n):
        wl = lo + (hi - lo) * i / (n - 1)
        try:
            v = stark.ac_stark_shift(atom, wl, cfg)
        except stark.ResonanceError:
            continue
        rows.append((wl, v))
    suffix = ""
    if getattr(args, "name_suffix", False):
        suffix = "_" + atom.species_name.lower().replace("-", "")
    sink.emit_table(f"stark_sweep{suffix}", ["wavelength_nm", "V_nK"], rows)
    summary = {"species": atom.species_name}
    try:
        summary["lambda_zero_nm"] = stark.find_stark_zero(atom, cfg)
    except stark.NoZeroCrossingError as exc:
        summary["lambda_zero_nm"] = None
        summary["error"] = str(exc)
    sink.emit_record(f"stark_zeros{suffix}", summary)
    return 0


def cmd_phonon(args, sink):
    a = _cfg(args, "a")
    V0_ph = args.v0_ph
    w_ph = _cfg(args, "w_ph")
    D = _cfg(args, "D")
    pattern = _make_pattern(args.pattern, a, V0_ph, w_ph, D, b=args.b)
    site = pattern.sites[len(pattern.sites) // 2]
    mat = lattice.dynamical_matrix(pattern, site)
    modes = lattice.phonon_modes(mat, M_RB87)
    sink.emit_record("phonon_modes", {
        "pattern": pattern.pattern_id,
        "modes": [{"omega_rad_s": m.frequency,
                   "freq_Hz": m.frequency / (2 * math.pi),
                   "polarization": list(m.polarization)} for m in modes],
        "two_spot_closed_form_rad_s": lattice.two_spot_frequency(V0_ph, w_ph, D, M_RB87),
    })
    xs = np.linspace(-w_ph, w_ph, args.steps)
    rows = [(float(x), float(lattice.site_potential(pattern, site,
                                                   site.center + np.array([x, 0.0]))))
            for x in xs]
    sink.emit_table("phonon_cross_section", ["x_um", "V_nK"], rows)
    return 0


def cmd_phi_map(args, sink):
    a = _cfg(args, "a")
    spec = _spec_from_args(args)
    w_ph = _cfg(args, "w_ph")
    D = _cfg(args, "D")
    b = args.b_over_aprime * a * math.sqrt(2.0) if args.b_over_aprime else None
    pattern = _make_pattern(args.pattern, a, 100.0, w_ph, D, b=b)
    emap = rydberg.effective_interaction(pattern, spec, a)
    rows = [(n, l, emap.values[(n, l)]) for (n, l) in emap.displacements]
    sink.emit_table("phi_map", ["dx", "dy", "phi_ratio"], rows)
    if args.sweep_b:
        sweep = []
        for frac in np.linspace(0.25, 0.45, 9):
            bb = frac * a * math.sqrt(2.0)
            pat = lattice.offset_parallel(a, 100.0, w_ph, D, bb)
            m = rydberg.effective_interaction(pat, spec, a)
            est = rydberg.nnn_ratio_estimate(bb, a, spec.eta, r_c=spec.r_c)
            sweep.append((float(frac), abs(m.values[(1, 1)]), est["ratio"]))
        sink.emit_table("phi_nnn_sweep", ["b_over_aprime", "numeric", "estimate"], sweep)
    return 0


def cmd_params(args, sink):
    a = _cfg(args, "a")
    V0s = np.linspace(args.v0_min, args.v0_max, args.steps)
    spec = _spec_from_args(args)
    w_ph = _cfg(args, "w_ph")
    D = _cfg(args, "D")
    scale = _cfg(args, "V0_ph_scale")
    a_s_um = _cfg(args, "a_s0") * 5.29177210903e-5  # 1 a0 = 5.2918e-5 um
    pattern = _make_pattern("holstein", a, 100.0, w_ph, D)
    emap = rydberg.effective_interaction(pattern, spec, a)

    # recoil convention of this sweep family: 2pi/a wavevector inside the
    # band-structure estimates, pi/a inside the interaction integral
    E_rec = hubbard.recoil_energy(a, M_K40, k_lat=2.0 * math.pi / a)
    rows = []
    for V0 in V0s:
        V0_hz = nk_to_hz(float(V0))
        t = hubbard.hopping_t(V0_hz, E_rec)
        U = hubbard.hubbard_U(math.pi / a, a_s_um, E_rec, V0_hz)
        omega = lattice.two_spot_frequency(scale * float(V0), w_ph, D, M_RB87)
        lam = rydberg.lambda_dimensionless(emap.phi00, 4.0 * t, M_RB87, omega)
        rows.append((float(V0), t, U, 4.0 * t * lam))
    sink.emit_table("params_sweep", ["V0_nK", "t_Hz", "U_Hz", "W_lambda_Hz"], rows)
    return 0


def cmd_binding(args, sink):
    tp = args.t_prime
    rows = []
    if args.model == "diagonal":
        for V in np.linspace(args.v_min, args.v_max, args.steps):
            th = pairs.threshold_diagonal(float(V), tp)
            rows.append((float(V), th.U_cr, int(th.pole)))
        sink.emit_table("threshold_diagonal", ["V", "U_cr", "pole"], rows)
    elif args.model == "physical":
        for lam in np.linspace(args.v_min, args.v_max, args.steps):
            res = pairs.threshold_physical(float(lam), args.t, args.renormalized)
            rows.append((float(lam), res["U_cr"], res["U_fesh_cr"], int(res["pole"])))
        sink.emit_table("threshold_physical", ["lambda", "U_cr", "U_fesh_cr", "pole"], rows)
    else:
        for V in np.linspace(args.v_min, args.v_max, args.steps):
            th = pairs.threshold_full(float(V), float(V), tp)
            rows.append((float(V), th.U_cr, int(th.pole)))
        sink.emit_table("threshold_full", ["V1=V2", "U_cr", "pole"], rows)
    return 0


def cmd_pair(args, sink):
    tp = args.t_prime
    rows = []
    for V in np.linspace(args.v_min, args.v_max, args.steps):
        U = args.U if args.U is not None else float(V)
        states = pairs.pair_energies_diagonal(U, float(V), tp)
        for s in states:
            rows.append((U, float(V), s.branch, s.E))
    sink.emit_table("pair_energies", ["U", "V", "branch", "E"], rows)
    return 0


def cmd_oracle(args, sink):
    if args.model == "diagonal":
        model = pairs.UVModel.diagonal(args.U, args.V1, args.t_prime)
    else:
        model = pairs.UVModel.full(args.U, args.V1, args.V2, args.t_prime)
    Ls = [int(x) for x in args.sizes.split(",")]
    rows = []
    per_L = []
    for L in Ls:
        spectrum = oracle.ground_energies(model, L, n_states=args.n_states)
        per_L.append(spectrum.energies[0])
        for i, E in enumerate(spectrum.energies):
            rows.append((L, i, E))
    sink.emit_table("oracle_energies", ["L", "index", "E"], rows)
    record = {"model": args.model, "U": args.U, "V1": args.V1, "V2": args.V2}
    if len(Ls) >= 3:
        ex = oracle.extrapolate_energy(Ls, per_L)
        record.update({"E_inf": ex.E_inf, "error": ex.error, "reliable": ex.reliable})
    if args.compare:
        roots = pairs.pair_energies(model)
        record["determinant_roots"] = [s.E for s in roots]
    sink.emit_record("oracle_summary", record)
    return 0


def cmd_phase(args, sink):
    family = phases.PhaseFamily(a=_cfg(args, "a"), n_B=_cfg(args, "n_B"),
                                omega_ratio=_cfg(args, "omega_ratio"),
                                D=_cfg(args, "D"),
                                V0_ph_scale=_cfg(args, "V0_ph_scale"))
    V0s = list(np.linspace(args.v0_min, args.v0_max, args.v0_steps))
    lams = list(np.linspace(args.lam_min, args.lam_max, args.lam_steps))
    grid = phases.phase_grid(V0s, lams, args.T, family)
    rows = []
    for row in grid.points:
        for p in row:
            rows.append((p.V0, p.lam, p.T_pair, p.T_bkt, p.label))
    sink.emit_table("phase_grid", ["V0_nK", "lambda", "T_pair_nK", "T_bkt_nK", "label"], rows)
    seg_rows = [(s[0][0], s[0][1], s[1][0], s[1][1]) for s in grid.contour]
    sink.emit_table("phase_contour", ["V0_a", "lambda_a", "V0_b", "lambda_b"], seg_rows)
    return 0


def cmd_figures(args, sink):
    ns = argparse.Namespace(**vars(args))
    ns.gf, ns.mf, ns.ellipticity = 0.0, 0.0, 0.0
    ns.wl_min = ns.wl_max = None
    ns.steps = 401
    ns.name_suffix = True
    for species in ("K-40", "Rb-87"):
        ns.species = species
        cmd_stark(ns, sink)
    ns.pattern, ns.v0_ph, ns.b = "offset-parallel", 250.0, None
    cmd_phonon(ns, sink)
    ns.b_over_aprime, ns.sweep_b = None, True
    for pat in ("holstein", "offset-parallel", "crossed", "bipartite-parallel"):
        ns.pattern = pat
        cmd_phi_map(ns, sink)
        ns.sweep_b = False
    ns.v0_min, ns.v0_max, ns.steps = 100.0, 600.0, 26
    cmd_params(ns, sink)
    ns.model, ns.t_prime, ns.t = "diagonal", 1.0, 1.0
    ns.v_min, ns.v_max, ns.steps, ns.renormalized = 0.0, 20.0, 41, True
    cmd_binding(ns, sink)
    ns.T = 20.0
    ns.v0_steps, ns.lam_steps = 21, 26
    ns.lam_min, ns.lam_max = 0.05, 5.0
    cmd_phase(ns, sink)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hhsim",
                                description="Painted-lattice Hubbard-Holstein "
                                            "simulator design toolkit")
    p.add_argument("--config", help="YAML config file with default overrides")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; sweeps run single-threaded for determinism")
    p.add_argument("--explain-defaults", action="store_true",
                   help="print the built-in physical defaults and exit")
    sub = p.add_subparsers(dest="cmd")

    s = sub.add_parser("stark", help="AC Stark shift sweep and zero crossings")
    s.add_argument("--species", default="K-40")
    s.add_argument("--wl-min", type=float)
    s.add_argument("--wl-max", type=float)
    s.add_argument("--steps", type=int, default=401)
    s.add_argument("--gf", type=float, default=0.0)
    s.add_argument("--mf", type=float, default=0.0)
    s.add_argument("--ellipticity", type=float, default=0.0)
    s.add_argument("--prefactor", type=float)
    s.set_defaults(func=cmd_stark)

    s = sub.add_parser("phonon", help="phonon-site potential and normal modes")
    s.add_argument("--pattern", default="offset-parallel")
    s.add_argument("--v0-ph", type=float, default=250.0)
    s.add_argument("--w-ph", dest="w_ph", type=float)
    s.add_argument("--D", type=float)
    s.add_argument("--b", type=float)
    s.add_argument("--a", type=float)
    s.add_argument("--steps", type=int, default=101)
    s.set_defaults(func=cmd_phonon)

    s = sub.add_parser("phi-map", help="effective interaction map")
    s.add_argument("--pattern", default="offset-parallel")
    s.add_argument("--b-over-aprime", type=float)
    s.add_argument("--sweep-b", action="store_true")
    s.add_argument("--a", type=float)
    s.add_argument("--n-ryd", type=int)
    s.add_argument("--alpha-bar", type=float)
    s.add_argument("--eta", type=int)
    s.add_argument("--w-ph", dest="w_ph", type=float)
    s.add_argument("--D", type=float)
    s.set_defaults(func=cmd_phi_map)

    s = sub.add_parser("params", help="t, U, W*lambda vs lattice depth")
    s.add_argument("--v0-min", type=float, default=100.0)
    s.add_argument("--v0-max", type=float, default=600.0)
    s.add_argument("--steps", type=int, default=26)
    s.add_argument("--n-ryd", type=int)
    s.add_argument("--alpha-bar", type=float)
    s.add_argument("--a", type=float)
    s.set_defaults(func=cmd_params)

    s = sub.add_parser("binding", help="pairing threshold curves")
    s.add_argument("--model", choices=("diagonal", "full", "physical"), default="diagonal")
    s.add_argument("--t-prime", type=float, default=1.0)
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--renormalized", action="store_true")
    s.add_argument("--v-min", type=float, default=0.0)
    s.add_argument("--v-max", type=float, default=20.0)
    s.add_argument("--steps", type=int, default=41)
    s.set_defaults(func=cmd_binding)

    s = sub.add_parser("pair", help="bound pair energies along a V sweep")
    s.add_argument("--U", type=float)
    s.add_argument("--t-prime", type=float, default=1.0)
    s.add_argument("--v-min", type=float, default=-10.0)
    s.add_argument("--v-max", type=float, default=0.0)
    s.add_argument("--steps", type=int, default=21)
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("oracle", help="finite-lattice exact two-body energies")
    s.add_argument("--model", choices=("diagonal", "full"), default="diagonal")
    s.add_argument("--U", type=float, required=True)
    s.add_argument("--V1", type=float, default=0.0)
    s.add_argument("--V2", type=float, default=0.0)
    s.add_argument("--t-prime", type=float, default=1.0)
    s.add_argument("--sizes", default="16,24,32")
    s.add_argument("--n-states", type=int, default=4)
    s.add_argument("--compare", action="store_true",
                   help="also report determinant-equation roots")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("phase", help="pairing/BKT phase map")
    s.add_argument("--T", type=float, default=20.0)
    s.add_argument("--v0-min", type=float, default=100.0)
    s.add_argument("--v0-max", type=float, default=600.0)
    s.add_argument("--v0-steps", type=int, default=21)
    s.add_argument("--lam-min", type=float, default=0.05)
    s.add_argument("--lam-max", type=float, default=5.0)
    s.add_argument("--lam-steps", type=int, default=26)
    s.set_defaults(func=cmd_phase)

    s = sub.add_parser("figures", help="emit all reproduction bundles")
    s.set_defaults(func=cmd_figures)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.explain_defaults:
        for key in sorted(DEFAULTS):
            print(f"{key} = {DEFAULTS[key]}  # {DEFAULT_NOTES[key]}")
        return 0
    if not getattr(args, "cmd", None):
        parser.print_usage()
        return 2
    args.config_data = _load_config(args.config)
    sink = OutputSink(args.out, args.format)
    try:
        status = args.func(args, sink)
    except (ValueError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            raise
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    sink.finish()
    return status


if __name__ == "__main__":
    sys.exit(main())
