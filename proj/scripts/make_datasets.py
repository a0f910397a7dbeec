#!/usr/bin/env python3
"""Regenerates the bundled benchmark CSVs under data/.

iris, wine, and wdbc come from the classic UCI tables shipped with
scikit-learn, reduced to outlier-detection form by keeping the majority
classes as inliers and downsampling one class to a handful of outliers
(the usual construction for these benchmarks). breast, iono, and hepat are
seeded synthetic stand-ins with the same shape, outlier count, and
contamination as the public benchmarks of the same name, which are not
redistributable here; their difficulty is calibrated so that standard
detectors score in the published ballpark.

Usage: python3 scripts/make_datasets.py [outdir]
"""
import os
import sys

import numpy as np
import sklearn.datasets as skd

OUT = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
os.makedirs(OUT, exist_ok=True)


def write_csv(name, names, X, labels):
    path = os.path.join(OUT, name + ".csv")
    with open(path, "w") as f:
        f.write(",".join(list(names) + ["label"]) + "\n")
        for row, lab in zip(X, labels):
            f.write(",".join(format(v, ".10g") for v in row) + f",{lab}\n")
    with open(os.path.join(OUT, name + ".schema"), "w") as f:
        for nm in names:
            f.write(f"{nm},numerical\n")
        f.write("label,label\n")
    print(f"{name}: {X.shape[0]} rows, {X.shape[1]} features, {labels.sum()} outliers")


def downsample(X, y, inlier_classes, outlier_class, n_out, seed):
    rng = np.random.default_rng(seed)
    Xin = X[np.isin(y, inlier_classes)]
    pick = rng.choice(np.where(y == outlier_class)[0], size=n_out, replace=False)
    return np.vstack([Xin, X[pick]]), np.array([0] * len(Xin) + [1] * n_out)


# iris: 100 inliers (versicolor+virginica) + 11 setosa outliers -> n=111, t=0.0991
iris = skd.load_iris()
X, lab = downsample(iris.data, iris.target, [1, 2], 0, 11, seed=12)
write_csv("iris", [n.replace(" (cm)", "").replace(" ", "_") for n in iris.feature_names], X, lab)

# wine: 119 inliers (classes 1+2) + 10 class-0 outliers -> n=129, t=0.0775
wine = skd.load_wine()
X, lab = downsample(wine.data, wine.target, [1, 2], 0, 10, seed=12)
write_csv("wine", [n.replace("/", "_") for n in wine.feature_names], X, lab)

# wdbc: 357 benign inliers + 39 malignant outliers -> n=396, t=0.0985
bc = skd.load_breast_cancer()
X, lab = downsample(bc.data, bc.target, [1], 0, 39, seed=12)
write_csv("wdbc", [n.replace(" ", "_") for n in bc.feature_names], X, lab)

# breast: 683x9 cytology-style integer scores, 444 inliers + 239 outliers, t=0.3499
rng = np.random.default_rng(77)
n_in, n_out, d = 444, 239, 9
mu_b = rng.uniform(1.1, 2.2, d)
mu_m = rng.uniform(4.5, 7.5, d)
X = np.vstack([np.clip(np.rint(rng.normal(mu_b, 1.0, (n_in, d))), 1, 10),
               np.clip(np.rint(rng.normal(mu_m, 2.6, (n_out, d))), 1, 10)])
write_csv("breast", [f"a{i+1}" for i in range(d)], X, np.array([0] * n_in + [1] * n_out))

# iono: 249x34 radar-return style, 225 phase-coherent returns + 24 incoherent, t=0.0963
rng = np.random.default_rng(99)
n_in, n_out, d = 225, 24, 34
rows = []
for _ in range(n_in):
    ts = np.arange(16)
    om = rng.uniform(0.15, 0.55)
    ph = rng.normal(0.0, 0.25)
    gam = rng.uniform(0.02, 0.10)
    re = np.cos(om * ts + ph) * np.exp(-gam * ts) + rng.normal(0, 0.07, 16)
    im = np.sin(om * ts + ph) * np.exp(-gam * ts) + rng.normal(0, 0.07, 16)
    row = np.empty(d)
    row[0] = 1.0
    row[1] = 0.0
    row[2::2] = np.clip(re, -1, 1)
    row[3::2] = np.clip(im, -1, 1)
    rows.append(row)
for _ in range(n_out):
    row = rng.uniform(-1, 1, d)
    row[0] = float(rng.integers(0, 2))
    row[1] = 0.0
    rows.append(row)
write_csv("iono", [f"a{i+1}" for i in range(d)], np.array(rows), np.array([0] * n_in + [1] * n_out))

# hepat: 80x19 clinical-marker style, 67 inliers + 13 outliers, t=0.1625
rng = np.random.default_rng(5)
n_in, n_out, d = 67, 13, 19
w1 = rng.uniform(0.6, 1.4, d) * np.where(rng.random(d) < 0.4, -1, 1)
w2 = rng.uniform(0.2, 0.6, d) * np.where(rng.random(d) < 0.5, -1, 1)
scale = rng.uniform(0.5, 40.0, d)
base = rng.uniform(-2, 50, d)
def gen_hepat(n, lo, hi):
    z = rng.uniform(lo, hi, n)
    u = rng.uniform(-1.4, 1.4, n)
    E = 0.35 * (z[:, None] * w1[None, :] + u[:, None] * w2[None, :]) \
        + np.clip(rng.normal(0, 0.25, (n, d)), -0.6, 0.6)
    return base[None, :] + scale[None, :] * E
X = np.vstack([gen_hepat(n_in, -1.55, 1.55), gen_hepat(n_out, 0.9, 2.7)])
write_csv("hepat", [f"a{i+1}" for i in range(d)], X, np.array([0] * n_in + [1] * n_out))
