import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

ANGLE_COLUMNS = ['phi', 'psi', 'alpha', 'beta', 'gamma', 'delta']
PARTNER_COLUMNS = ['alpha_bar', 'beta_bar', 'gamma_bar', 'delta_bar']


def load_sweep(file_path):
    """
    Reads a sweep CSV written by `python -m regge_symmetry sweep`.

    Args:
        file_path (str): Path to the CSV file.

    Returns:
        pd.DataFrame: One row per value of t, sorted by t.
    """
    sweep = pd.read_csv(file_path)
    missing = [col for col in ['t', 'vol', 'vol_bar'] + ANGLE_COLUMNS + PARTNER_COLUMNS
               if col not in sweep.columns]
    if missing:
        raise ValueError(f"sweep file {file_path} lacks columns {missing}")
    return sweep.sort_values('t').reset_index(drop=True)


def generate_volume_chart(sweep):
    """
    Line chart of the tetrahedron and partner volumes against the y-edge length.

    The two curves should lie on top of each other; the gap is drawn on a
    second axis.
    """
    fig, ax = plt.subplots(figsize=(12, 6))

    ax.plot(sweep['t'], sweep['vol'], color="#00356B", linewidth=2, label="Vol")
    ax.plot(sweep['t'], sweep['vol_bar'], color="#0072CE", linewidth=1, linestyle="--", label="Vol (partner)")

    gap = ax.twinx()
    gap.plot(sweep['t'], (sweep['vol'] - sweep['vol_bar']).abs(), color="red", alpha=0.4, label="|difference|")
    gap.set_ylabel("|Vol - Vol partner|", fontsize=12)

    # Formatting
    ax.set_title("Volume along the y-deformation", fontsize=14, color="#00356B")
    ax.set_xlabel("y", fontsize=12)
    ax.set_ylabel("Volume", fontsize=12)
    ax.legend(loc="upper left")
    gap.legend(loc="upper right")
    ax.grid(True, linestyle="--", alpha=0.6)

    plt.tight_layout()
    return fig


def generate_angle_chart(sweep):
    """
    Dihedral angles of the tetrahedron (solid) and of its partner (dashed).
    """
    fig, ax = plt.subplots(figsize=(12, 6))

    for col in ANGLE_COLUMNS:
        ax.plot(sweep['t'], sweep[col], linewidth=2, label=col)
    for col in PARTNER_COLUMNS:
        ax.plot(sweep['t'], sweep[col], linewidth=1, linestyle="--", label=col)

    ax.set_title("Dihedral angles along the y-deformation", fontsize=14, color="#00356B")
    ax.set_xlabel("y", fontsize=12)
    ax.set_ylabel("Angle (rad)", fontsize=12)
    ax.legend(ncol=2)
    ax.grid(True, linestyle="--", alpha=0.6)

    plt.tight_layout()
    return fig


def main(file_path, output_prefix):
    sweep = load_sweep(file_path)
    print(f"Loaded {len(sweep)} rows from {file_path}")
    print(f"Largest volume gap: {(sweep['vol'] - sweep['vol_bar']).abs().max():.3e}")

    # Generate Charts
    written = []
    for name, fig in (('volume', generate_volume_chart(sweep)), ('angles', generate_angle_chart(sweep))):
        path = f"{output_prefix}_{name}.png"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
        print(f"Chart written: {path}")
    return written


if __name__ == "__main__":
    if len(sys.argv) != 3:
        print("usage: python analytics/sweep_chart.py SWEEP.csv OUTPUT_PREFIX")
        sys.exit(2)
    main(sys.argv[1], sys.argv[2])
