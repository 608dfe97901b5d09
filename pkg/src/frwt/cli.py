"""``frwt`` command line: transform, reconstruct, analyze, verify.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 violated mathematical hypothesis (inadmissible wavelet, degenerate
pair, non-compact wavelet where compact support is required).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .cfrwt import build_scale_grid, cfrwt_forward, reconstruct
from .errors import FormatError, FrwtError, HypothesisError, InputError
from .grids import UniformGrid, build_uniform_grid, check_theta, norm
from .io import (grid_from_dict, grid_to_dict, read_scalogram, read_signal_csv,
                 write_scalogram, write_signal_csv)
from .spaces import (BallFamily, MollifierFamily, hardy_bound_report, hardy_norm,
                     morrey_bound_report, morrey_norm)
from .verify import GROUPS, run_suite
from .wavelets import catalog, cross_admissibility, make_wavelet

log = logging.getLogger("frwt")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


@dataclass
class RunConfig:
    """Validated settings for one command; JSON config keys mirror these fields."""

    theta: float | None = None
    wavelet: str = "mexican_hat"
    wavelet_file: str | None = None
    input: str | None = None
    out: str | None = None
    scales: str | None = None
    translations: str | None = None
    normalized: bool = False
    method: str = "spectral"
    reference: str | None = None
    synthesis_wavelet: str | None = None
    only: str | None = None
    perturb: float = 0.0
    pair: str | None = None
    nu: float = 0.5
    bounds: str | None = None

    @classmethod
    def from_sources(cls, args):
        values = {}
        if getattr(args, "config", None):
            try:
                raw = json.loads(Path(args.config).read_text())
            except OSError as exc:
                raise FormatError(f"cannot read config {args.config}: {exc.strerror}") from None
            except json.JSONDecodeError as exc:
                raise FormatError(f"config {args.config} is not valid JSON ({exc})") from None
            if not isinstance(raw, dict):
                raise FormatError("config file must hold a JSON object")
            known = {f.name for f in fields(cls)}
            unknown = sorted(set(raw) - known)
            if unknown:
                raise FormatError(f"unknown config keys: {', '.join(unknown)}")
            values.update(raw)
        for f in fields(cls):
            v = getattr(args, f.name, None)
            if v is not None and v is not False:
                values[f.name] = v
        cfg = cls(**values)
        if cfg.theta is not None:
            cfg.theta = check_theta(cfg.theta)
        if cfg.method not in ("spectral", "direct"):
            raise FormatError(f"method must be 'spectral' or 'direct', got {cfg.method!r}")
        if isinstance(cfg.scales, dict):
            cfg.scales = ",".join(str(cfg.scales[k]) for k in ("min", "max", "count", "signed")
                                  if k in cfg.scales)
        if isinstance(cfg.translations, dict):
            cfg.translations = ",".join(str(cfg.translations[k]) for k in ("min", "max", "count"))
        return cfg

    @property
    def order(self):
        """θ with the default of 1 applied."""
        return 1.0 if self.theta is None else self.theta

    def echo(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _parse_scales(text):
    if text is None:
        return {"min": 0.125, "max": 8.0, "count": 48, "signed": True}
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) not in (3, 4):
        raise FormatError(f"--scales expects min,max,count[,signed], got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError(f"--scales has non-numeric fields: {text!r}") from None
    signed = True
    if len(parts) == 4:
        flag = parts[3].lower()
        if flag not in ("true", "false", "1", "0", "signed", "positive"):
            raise FormatError(f"--scales signed flag must be true/false, got {parts[3]!r}")
        signed = flag in ("true", "1", "signed")
    if not (0 < lo < hi) or n < 2:
        raise FormatError(f"--scales needs 0 < min < max and count >= 2, got {text!r}")
    return {"min": lo, "max": hi, "count": n, "signed": signed}


def _parse_translations(text, signal_grid):
    if text is None:
        # twice the signal span, same step
        c = 0.5 * (signal_grid.t_min + signal_grid.t_max)
        half = signal_grid.span
        return build_uniform_grid(c - half, c + half, 2 * (signal_grid.count - 1) + 1)
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise FormatError(f"--translations expects min,max,count, got {text!r}")
    try:
        return build_uniform_grid(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError:
        raise FormatError(f"--translations has non-numeric fields: {text!r}") from None


def _wavelet_grid(signal_step):
    step = min(signal_step, 1.0 / 32)
    n = int(np.ceil(16.0 / step)) + 1
    return build_uniform_grid(-8.0, 8.0, n)


def _load_wavelet(name, wavelet_file, theta, signal_step):
    if wavelet_file:
        sig = read_signal_csv(wavelet_file)
        return make_wavelet(sig, theta, name=Path(wavelet_file).stem), {"wavelet_file": str(wavelet_file)}
    grid = _wavelet_grid(signal_step)
    return catalog(name, grid, theta), {"wavelet": name, "wavelet_grid": grid_to_dict(grid)}


def _emit_json(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True, default=float) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_transform(cfg):
    if not cfg.input or not cfg.out:
        raise FormatError("transform needs --input and --out")
    f = read_signal_csv(cfg.input)
    psi, wmeta = _load_wavelet(cfg.wavelet, cfg.wavelet_file, cfg.order, f.grid.step)
    scales = _parse_scales(cfg.scales)
    b_grid = _parse_translations(cfg.translations, f.grid)
    grid = build_scale_grid(b_grid, cfg.order, scales["min"], scales["max"],
                            scales["count"], scales["signed"])
    S = cfrwt_forward(f, psi, grid, cfg.method)
    if cfg.normalized:
        S = S.scaled(1.0 / np.sqrt(psi.admissibility), normalized=True)
    meta = dict(wmeta)
    meta.update({"scales": scales, "signal_grid": grid_to_dict(f.grid),
                 "admissibility": psi.admissibility, "method": cfg.method,
                 "config": cfg.echo()})
    write_scalogram(cfg.out, S, meta)
    log.info("wrote %d x %d scalogram to %s", *S.values.shape, cfg.out)
    return EXIT_OK


def cmd_reconstruct(cfg):
    if not cfg.input or not cfg.out:
        raise FormatError("reconstruct needs --input and --out")
    S, side = read_scalogram(cfg.input)
    if cfg.theta is not None and abs(S.theta - cfg.theta) > 1e-12:
        raise FormatError(f"--theta {cfg.theta} disagrees with the sidecar θ={S.theta}")
    theta = S.theta
    try:
        t_grid = grid_from_dict(side["signal_grid"])
    except KeyError:
        raise FormatError("sidecar lacks signal_grid") from None
    if "wavelet_file" in side:
        phi = make_wavelet(read_signal_csv(side["wavelet_file"]), theta,
                           name=Path(side["wavelet_file"]).stem)
    else:
        phi = catalog(side.get("wavelet", S.wavelet_id), grid_from_dict(side["wavelet_grid"]), theta)
    if cfg.normalized or S.normalized:
        S = S.scaled(np.sqrt(phi.admissibility), normalized=False)
    if cfg.synthesis_wavelet:
        psi = catalog(cfg.synthesis_wavelet, phi.grid, theta)
        C = cross_admissibility(phi, psi)
    else:
        psi, C = phi, phi.admissibility
    rec = reconstruct(S, psi, C, t_grid)
    write_signal_csv(cfg.out, rec)
    result = {"output": str(cfg.out)}
    if cfg.reference:
        ref = read_signal_csv(cfg.reference)
        if not ref.grid.same_as(t_grid):
            raise FormatError("reference signal grid differs from the reconstruction grid")
        result["relative_l2_error"] = norm(rec - ref) / norm(ref) if norm(ref) > 0 else norm(rec)
    _emit_json(result, None)
    return EXIT_OK


def cmd_analyze(cfg):
    signal = read_signal_csv(cfg.input) if cfg.input else None
    step = signal.grid.step if signal is not None else 1.0 / 32
    psi, wmeta = _load_wavelet(cfg.wavelet, cfg.wavelet_file, cfg.order, step)
    report = {"theta": cfg.order, "wavelet": psi.name, "admissibility": psi.admissibility,
              "l1_norm": psi.l1_norm, "l2_norm": psi.l2_norm,
              "compact_support": psi.compact_support, "support": list(psi.support)}
    if cfg.pair:
        cross = {}
        for name in [p.strip() for p in cfg.pair.split(",") if p.strip()]:
            other = catalog(name, psi.grid, cfg.order)
            c = cross_admissibility(other, psi)
            cross[name] = {"re": c.value.real, "im": c.value.imag,
                           "absolute_integral": c.absolute_integral, "finite": c.finite}
        report["cross_admissibility"] = cross
    if signal is not None:
        report["signal"] = {
            "l1_norm": norm(signal, 1), "l2_norm": norm(signal, 2),
            "hardy_estimate": hardy_norm(signal, MollifierFamily()),
            "morrey_estimate": morrey_norm(signal, BallFamily.for_grid(signal.grid, cfg.nu)),
            "nu": cfg.nu}
    if cfg.bounds:
        if signal is None:
            raise FormatError("--bounds needs --input")
        g = read_signal_csv(cfg.reference) if cfg.reference else signal
        if cfg.scales:
            sc = _parse_scales(cfg.scales)
            mags = np.geomspace(sc["min"], sc["max"], sc["count"])
            scales = np.r_[-mags[::-1], mags] if sc["signed"] else mags
        else:
            scales = np.array([s * 2.0 ** k for s in (-1, 1) for k in range(-2, 3)])
        if cfg.bounds == "hardy":
            rep = hardy_bound_report(signal, g, psi, psi, scales, method=cfg.method)
        else:
            rep = morrey_bound_report(signal, g, psi, psi, scales, nu=cfg.nu, method=cfg.method)
        report["bounds"] = rep.to_dict()
        _emit_json(report, cfg.out)
        return EXIT_OK if rep.all_pass else EXIT_VERIFY
    _emit_json(report, cfg.out)
    return EXIT_OK


def cmd_verify(cfg):
    only = [s.strip() for s in cfg.only.split(",")] if cfg.only else None
    if only:
        unknown = [s for s in only if s not in GROUPS]
        if unknown:
            raise FormatError(f"unknown suite(s) {', '.join(unknown)}; "
                              f"choose from {', '.join(GROUPS)}")
    passed, report = run_suite(only, cfg.perturb)
    _emit_json(report, cfg.out)
    for c in report["checks"]:
        if c["gating"] and not c["passed"]:
            print(f"FAILED {c['name']}: {c['value']:.6g} (threshold {c['threshold']:.6g})",
                  file=sys.stderr)
    return EXIT_OK if passed else EXIT_VERIFY


COMMANDS = {"transform": cmd_transform, "reconstruct": cmd_reconstruct,
            "analyze": cmd_analyze, "verify": cmd_verify}


def build_parser():
    p = argparse.ArgumentParser(prog="frwt", description="Fractional wavelet transform toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--theta", type=float, help="fractional order in (0, 1]")
    shared.add_argument("--wavelet", help="catalog wavelet name")
    shared.add_argument("--wavelet-file", dest="wavelet_file", help="wavelet samples (t,re,im CSV)")
    shared.add_argument("--input", help="input file")
    shared.add_argument("--out", help="output file")
    shared.add_argument("--config", help="JSON file with default settings")
    shared.add_argument("--scales", help="min,max,count[,signed]")
    shared.add_argument("--translations", help="min,max,count")
    shared.add_argument("--normalized", action="store_true", default=None,
                        help="divide by sqrt of the admissibility constant")
    shared.add_argument("--method", choices=["spectral", "direct"])
    shared.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("transform", parents=[shared], help="compute a scalogram")
    r = sub.add_parser("reconstruct", parents=[shared], help="invert a scalogram")
    r.add_argument("--reference", help="signal CSV to compare against")
    r.add_argument("--synthesis-wavelet", dest="synthesis_wavelet",
                   help="catalog wavelet used for synthesis")
    a = sub.add_parser("analyze", parents=[shared], help="wavelet and signal constants")
    a.add_argument("--pair", help="comma-separated catalog names for cross constants")
    a.add_argument("--nu", type=float, help="Morrey exponent (default 0.5)")
    a.add_argument("--bounds", choices=["hardy", "morrey"],
                   help="check the transform's norm bounds on --input")
    a.add_argument("--reference", help="second signal for the distance bound (default: --input)")
    v = sub.add_parser("verify", parents=[shared], help="run the verification suite")
    v.add_argument("--only", help=f"comma-separated subset of: {', '.join(GROUPS)}")
    v.add_argument("--perturb", type=float, help="relative fault injected into C")
    return p


_VALUE_FLAGS = ("--theta", "--scales", "--translations", "--perturb", "--nu")


def _glue_negative_values(argv):
    """Rewrite ``--flag -1,2,3`` as ``--flag=-1,2,3`` so argparse keeps the value."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1][:2].lstrip("-")[:1] in (
                *"0123456789.",) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.from_sources(args)
        return COMMANDS[args.command](cfg)
    except HypothesisError as exc:
        print(f"frwt: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (InputError, FrwtError) as exc:
        print(f"frwt: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, TypeError) as exc:
        print(f"frwt: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
