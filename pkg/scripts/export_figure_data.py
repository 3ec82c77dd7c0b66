"""Write sphere sections, small spheres and sample geodesics as CSV files.

    python scripts/export_figure_data.py --out figdata
"""

import argparse
import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from heisyn.cli import fmt
from heisyn.loci import cross_section, sample_sphere
from heisyn.riemann import cut_time, exp_riemann
from heisyn.subriemann import cut_time_sr, exp_sr


@dataclass
class FigureConfig:
    out: Path = Path("figdata")
    eps_values: tuple = (0.0, 0.1, 1.0)
    section_radii: tuple = (2.0, 1.0, 0.5, 0.25)
    small_radius: float = 0.1
    n_theta: int = 201
    n_phi: int = 64
    n_time: int = 400
    geodesic_thetas: tuple = (0.2, 0.6, 1.0, 1.4)
    sr_momenta: tuple = field(default=(0.5, 1.0, 2.0))


def write(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows([fmt(v) for v in row] for row in rows)


def export(cfg: FigureConfig) -> list[Path]:
    cfg.out.mkdir(parents=True, exist_ok=True)
    written = []
    for eps in cfg.eps_values:
        for r in cfg.section_radii:
            s = sample_sphere(eps, r, cfg.n_theta, 2)
            path = cfg.out / f"section_eps{eps:g}_r{r:g}.csv"
            write(path, ["theta", "rho", "z"], ([th, *p] for th, p in zip(s.thetas, cross_section(s))))
            written.append(path)
        s = sample_sphere(eps, cfg.small_radius, cfg.n_theta // 4, cfg.n_phi)
        path = cfg.out / f"sphere_eps{eps:g}_r{cfg.small_radius:g}.csv"
        write(path, ["theta", "phi", "x", "y", "z"], ([th, ph, *q] for th, ph, q in s.samples))
        written.append(path)

        path = cfg.out / f"geodesics_eps{eps:g}.csv"
        rows = []
        if eps == 0:
            for c in cfg.sr_momenta:
                t = np.linspace(0, cut_time_sr(c), cfg.n_time)
                rows += [[c, ti, *p] for ti, p in zip(t, exp_sr(c, 0.0, t))]
        else:
            for th in cfg.geodesic_thetas:
                t = np.linspace(0, cut_time(eps, th), cfg.n_time)
                rows += [[th, ti, *p] for ti, p in zip(t, exp_riemann(eps, th, 0.0, t))]
        write(path, ["momentum", "t", "x", "y", "z"], rows)
        written.append(path)
    return written


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=FigureConfig.out)
    p.add_argument("--n-theta", type=int, default=FigureConfig.n_theta)
    args = p.parse_args()
    for path in export(FigureConfig(out=args.out, n_theta=args.n_theta)):
        print(path)


if __name__ == "__main__":
    main()
