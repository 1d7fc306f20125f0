"""Command-line driver: verify identities, run lifting experiments, export data.

Design constraints the code must honor:
- determinism: a fixed config and seed produce byte-identical reports, so
  JSON is dumped with sorted keys and no timestamps;
- atomicity: every report is written to a temporary file in the target
  directory and renamed into place;
- exit codes: 0 success, 1 numerical failure (identity above tolerance, or
  every experiment size failed), 2 config or I/O problem.
"""

import argparse
import concurrent.futures
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import fock as fock_mod
from . import frames, gabor, matalg, multipliers
from .coorbit import coercivity_check, lifting_theorem_pipeline
from .weights import Weight

SCHEMA_VERSION = 1
DEFAULT_TOL = 1e-10
CSV_COLUMNS = ("size", "p", "weight", "lower", "upper", "condition", "verdict")


class ConfigError(ValueError):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def write_atomic(path: Path, text: str) -> None:
    tmp = path.parent / (path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _dump_json(path: Path, payload: dict) -> None:
    write_atomic(path, json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n")


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_table(out_dir: Path, rows: list) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt_cell(row.get(c)) for c in CSV_COLUMNS))
    write_atomic(out_dir / "lifting_table.csv", "\n".join(lines) + "\n")
    dat = ["# " + " ".join(CSV_COLUMNS)]
    for row in rows:
        dat.append(" ".join(_fmt_cell(row.get(c)) or "nan" for c in CSV_COLUMNS))
    write_atomic(out_dir / "lifting_table.dat", "\n".join(dat) + "\n")


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    if "kind" not in cfg:
        raise ConfigError("config needs a 'kind' field")
    return cfg


def _require(cfg: dict, key: str, types, what: str):
    if key not in cfg:
        raise ConfigError(f"{what} config needs '{key}'")
    val = cfg[key]
    if not isinstance(val, types):
        raise ConfigError(f"'{key}' has the wrong type")
    return val


def build_frame(spec, seed: int) -> frames.Frame:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError("frame spec must be an object with a 'type'")
    kind = spec["type"]
    try:
        if kind == "onb":
            return frames.onb(int(spec["d"]))
        if kind == "random":
            rng = np.random.default_rng(int(spec.get("seed", seed)))
            return frames.random_frame(
                rng, int(spec["n"]), int(spec["d"]), kind=spec.get("variant", "generic")
            )
        if kind == "gabor":
            return gabor.gabor_system(int(spec["N"]), int(spec["a"]), int(spec["b"])).frame
        if kind == "fock":
            return fock_mod.embed_truncated(fock_mod.FockLattice.from_dict(spec))
        if kind == "json":
            return frames.Frame.load_json(spec["path"])
    except (KeyError, ValueError, TypeError, OSError) as exc:
        raise ConfigError(f"bad frame spec: {exc}") from exc
    raise ConfigError(f"unknown frame type '{kind}'")


def build_weight(spec, frame: frames.Frame):
    if spec is None:
        return None
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError("weight spec must be an object with a 'type'")
    try:
        if spec["type"] == "constant":
            return Weight.constant(frame.index_set, float(spec.get("c", 1.0)))
        if spec["type"] == "polynomial":
            return Weight.polynomial(frame.index_set, float(spec["t"]))
        if spec["type"] == "values":
            return Weight(np.asarray(spec["values"], dtype=float), frame.index_set)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad weight spec: {exc}") from exc
    raise ConfigError(f"unknown weight type '{spec['type']}'")


def _parse_ps(cfg) -> list:
    ps = cfg.get("ps", [2])
    if not isinstance(ps, list) or not ps:
        raise ConfigError("'ps' must be a nonempty list")
    out = []
    for p in ps:
        if p in ("inf", "Infinity"):
            out.append(np.inf)
        elif isinstance(p, (int, float)) and p >= 1:
            out.append(float(p) if p != int(p) else int(p))
        else:
            raise ConfigError(f"unsupported p value: {p!r}")
    return out


def cmd_verify(cfg: dict, out_dir: Path, seed: int, tol: float) -> int:
    frame = build_frame(_require(cfg, "frame", dict, "verify"), seed)
    mu = build_weight(cfg.get("mu", {"type": "constant", "c": 1.0}), frame)
    wspecs = cfg.get("weights", [{"type": "polynomial", "t": 1.0}])
    if not isinstance(wspecs, list):
        raise ConfigError("'weights' must be a list")
    weights = [build_weight(wspec, frame) for wspec in wspecs]
    ps = _parse_ps(cfg)
    s = float(cfg.get("s", 4.0))

    identities = frames.gram_identities_check(frame, rtol=tol)
    coercivity = coercivity_check(frame, mu, seed=seed, tol=max(tol, 1e-12))
    M = multipliers.multiplier(mu, frame).matrix
    suite = multipliers.spectral_invariance_suite(M, frame, weights, ps, s)

    residuals = {k: v for k, v in identities.items() if isinstance(v, float)}
    residuals["coercivity_identity"] = coercivity["identity_residual"]
    amb = coercivity["ambient_constants"]
    ev = np.linalg.eigvalsh(M)
    residuals["coercivity_extremes_agreement"] = float(
        max(abs(amb[0] - ev[0]), abs(amb[1] - ev[-1])) / max(1.0, abs(ev[-1]))
    )
    b_verdicts = multipliers.invertibility_verdicts(M, frame)
    residuals["invertibility_verdict_mismatch"] = float(
        any(v != b_verdicts["operator"] for k, v in b_verdicts.items() if k != "operator")
    )
    ok = bool(all(v <= tol for v in residuals.values()))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "seed": seed,
        "tolerance": tol,
        "config": cfg,
        "frame": {"n": frame.n, "d": frame.d, "bounds": list(map(float, frame.bounds))},
        "residuals": residuals,
        "coercivity": coercivity,
        "gram_identities": identities,
        "spectral_suite": suite,
        "ok": ok,
    }
    _dump_json(out_dir / "identities.json", payload)
    return 0 if ok else 1


def _single_size_gabor(cfg, N, ps, seed):
    kwargs = dict(
        t_mu=float(cfg.get("mu", {}).get("t", 2.0)),
        t_check=float(cfg.get("t_check", 2.0)),
        s=float(cfg.get("s", 4.0)),
        ps=ps,
        m_t=float(cfg.get("m", {}).get("t", 0.0)) if cfg.get("m") else 0.0,
        seed=seed,
    )
    if "a_ratio" in cfg or "b_ratio" in cfg:
        kwargs["a_ratio"] = cfg.get("a_ratio")
        kwargs["b_ratio"] = cfg.get("b_ratio", cfg.get("a_ratio"))
    else:
        kwargs["redundancy"] = int(cfg.get("redundancy", 4))
    return gabor.gabor_lifting_experiment([N], **kwargs)


def _single_size_fock(cfg, R, ps, seed):
    return fock_mod.fock_lifting_experiment(
        float(_require(cfg, "delta", (int, float), "fock")),
        [R],
        t_mu=float(cfg.get("mu", {}).get("t", 2.0)),
        m_t=float(cfg.get("m", {}).get("t", 0.0)) if cfg.get("m") else 0.0,
        ps=ps,
        s=float(cfg.get("s", 4.0)),
        margin=float(cfg.get("margin", 0.5)),
        jitter=float(cfg.get("jitter", 0.0)),
        seed=seed,
    )


def _merge_reports(parts: list) -> dict:
    merged = dict(parts[0])
    merged["entries"] = [e for part in parts for e in part["entries"]]
    for key in ("decay_scaling", "gram_decay_scaling", "window_decay"):
        if key in merged and isinstance(merged[key], dict):
            acc = {}
            for part in parts:
                sub = part.get(key, {})
                for k, v in sub.items():
                    if isinstance(v, dict) and k in acc and isinstance(acc[k], dict):
                        acc[k].update(v)
                    else:
                        acc[k] = v
            merged[key] = acc
    conds = [e["condition"] for e in merged["entries"] if e.get("status") == "ok"]
    ratios = [conds[i + 1] / conds[i] for i in range(len(conds) - 1)] if len(conds) > 1 else []
    for key in ("condition_ratios", "condition_growths"):
        if key in merged:
            merged[key] = ratios
    return merged


def _entry_rows(entry: dict, ps: list, size_key: str) -> list:
    rows = []
    label = entry[size_key]
    if entry.get("status") == "ok":
        per_p = entry["report"]["per_p_results"]
        for key, res in per_p.items():
            rows.append(
                {
                    "size": label,
                    "p": key,
                    "weight": res.get("weight", "m*sqrt(mu)"),
                    "lower": float(res["lower"]),
                    "upper": float(res["upper"]),
                    "condition": float(res["condition"]),
                    "verdict": "ok" if entry["report"]["verdicts"].get("all_steps") else "fail",
                }
            )
    else:
        for p in ps:
            rows.append(
                {
                    "size": label,
                    "p": "inf" if p == np.inf else str(p),
                    "weight": "m*sqrt(mu)",
                    "lower": None,
                    "upper": None,
                    "condition": float("inf"),
                    "verdict": "fail",
                }
            )
    return rows


def cmd_lift(cfg: dict, out_dir: Path, seed: int, tol: float, threads: int) -> int:
    kind = cfg["kind"]
    ps = _parse_ps(cfg)
    if kind == "gabor":
        sizes = _require(cfg, "Ns", list, "gabor")
        runner, size_key = _single_size_gabor, "N"
    elif kind == "fock":
        sizes = _require(cfg, "R_list", list, "fock")
        runner, size_key = _single_size_fock, "R"
    elif kind == "custom-frame":
        return _lift_custom(cfg, out_dir, seed, ps)
    else:
        raise ConfigError(f"unknown lift kind '{kind}'")
    if not sizes:
        raise ConfigError("experiment needs at least one size")

    def run(size):
        return runner(cfg, size, ps, seed)

    try:
        if threads > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(run, sizes))
        else:
            parts = [run(size) for size in sizes]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"experiment parameters invalid: {exc}") from exc

    merged = _merge_reports(parts)
    merged["schema_version"] = SCHEMA_VERSION
    merged["seed"] = seed
    merged["config"] = cfg
    rows = []
    for entry in merged["entries"]:
        rows.extend(_entry_rows(entry, ps, size_key))
        _dump_json(
            out_dir / f"lift_{size_key}{entry[size_key]}.json",
            {"schema_version": SCHEMA_VERSION, "seed": seed, "entry": entry},
        )
    _dump_json(out_dir / "lift_report.json", merged)
    _write_table(out_dir, rows)
    any_ok = any(e.get("status") == "ok" for e in merged["entries"])
    return 0 if any_ok else 1


def _lift_custom(cfg: dict, out_dir: Path, seed: int, ps: list) -> int:
    frame = build_frame(_require(cfg, "frame", dict, "custom-frame"), seed)
    mu = build_weight(cfg.get("mu", {"type": "constant", "c": 1.0}), frame)
    m = build_weight(cfg.get("m"), frame)
    try:
        rep = lifting_theorem_pipeline(
            frame, mu, m=m, ps=ps, s=float(cfg.get("s", 4.0)), seed=seed
        )
    except frames.NotAFrameError as exc:
        entry = {
            "size": frame.n,
            "status": "not_a_frame",
            "lower": exc.lower,
            "upper": exc.upper,
        }
        _dump_json(
            out_dir / "lift_report.json",
            {"schema_version": SCHEMA_VERSION, "seed": seed, "config": cfg, "entries": [entry]},
        )
        _write_table(out_dir, _entry_rows(entry, ps, "size"))
        return 1
    payload = {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "config": cfg,
        "entries": [{"size": frame.n, "status": "ok", "report": rep.to_dict(), "condition": rep.condition}],
    }
    _dump_json(out_dir / "lift_report.json", payload)
    _write_table(out_dir, rep.csv_rows(frame.n))
    return 0


def cmd_export(cfg: dict, out_dir: Path, seed: int) -> int:
    what = _require(cfg, "what", str, "export")
    frame = build_frame(_require(cfg, "frame", dict, "export"), seed)
    fmt = cfg.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError("format must be 'json' or 'csv'")
    name = cfg.get("name", what)
    if what == "frame":
        if fmt != "json":
            raise ConfigError("frames export as JSON only")
        payload = {"schema_version": SCHEMA_VERSION, **frame.to_dict()}
        write_atomic(out_dir / f"{name}.json", json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 0
    if what == "gram":
        target = frame.gram_matrix
    elif what == "multiplier":
        mu = build_weight(cfg.get("mu", {"type": "constant", "c": 1.0}), frame)
        target = multipliers.multiplier(mu, frame).matrix
    else:
        raise ConfigError(f"unknown export target '{what}'")
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, **matalg.matrix_to_json(target)}
        write_atomic(out_dir / f"{name}.json", json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        matalg.save_matrix_csv(target, out_dir / f"{name}_real.csv", out_dir / f"{name}_imag.csv")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="framelift",
        description="verify frame-calculus identities and run lifting experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("verify", "check algebraic identities on a configured frame"),
        ("lift", "run a lifting experiment and emit reports plus a CSV table"),
        ("export", "serialize a frame, Gram matrix, or multiplier"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--config", required=True, help="path to a JSON config")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--seed", type=int, default=None, help="seed override")
        sp.add_argument("--tol", type=float, default=None, help="tolerance override")
        sp.add_argument("--threads", type=int, default=1, help="parallel experiment sizes")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
        seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
        tol = args.tol if args.tol is not None else float(cfg.get("tol", DEFAULT_TOL))
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "verify":
            return cmd_verify(cfg, out_dir, seed, tol)
        if args.command == "lift":
            return cmd_lift(cfg, out_dir, seed, tol, max(1, args.threads))
        return cmd_export(cfg, out_dir, seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
