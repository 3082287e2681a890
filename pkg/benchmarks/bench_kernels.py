#!/usr/bin/env python3
"""Benchmark the numpy and compiled kernel backends on hot-path shapes.

Three tiers: raw kernel calls at training shapes, one full training batch
(forward + backward + optimizer step), and the discrete sampler.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from hginfer import kernels, simulation, training
from hginfer.autodiff import Adam
from hginfer.autodiff import tensor as T


def timeit(fn, repeat, warmup=2):
    for _ in range(warmup):
        fn()
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def bench_affine(backend, repeat):
    kernels.use_backend(backend)
    rng = np.random.default_rng(0)
    # the dominant training shape: (batch*transitions*nodes, width)
    x = rng.normal(size=(19200, 64))
    w = rng.normal(size=(64, 64))
    b = rng.normal(size=64)
    g = rng.normal(size=(19200, 64))
    fwd = timeit(lambda: kernels.affine(x, w, b, kernels.ACT_RELU), repeat)
    y = kernels.affine(x, w, b, kernels.ACT_RELU)
    bwd = timeit(lambda: kernels.affine_backward(x, w, y, g, kernels.ACT_RELU), repeat)
    return fwd, bwd


def bench_sampler(backend, repeat):
    kernels.use_backend(backend)
    rng = np.random.default_rng(1)
    logw = rng.normal(size=(128, 6))
    u = rng.random((128, 6))
    return timeit(lambda: kernels.cond_bernoulli_sample(logw, 3, u), repeat * 10)


def bench_train_batch(backend, repeat):
    kernels.use_backend(backend)
    sim_cfg = simulation.SimConfig(n_train=128, n_valid=4, n_test=4, seed=0)
    splits = simulation.generate_dataset(sim_cfg)
    arr = training.stack_split(splits["train"])
    cfg = training.TrainConfig(variant="sphinx", seed=0)
    model = training.Model(cfg, sim_cfg)
    opt = Adam(model.store, lr=cfg.lr)

    def step():
        loss = model.transition_loss(arr, np.random.default_rng(3))
        model.store.zero_grad()
        T.backward(loss)
        opt.step()

    return timeit(step, max(repeat // 2, 2))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "c" not in backends:
        print("compiled backend not built; run `pip install -e . --no-build-isolation`")
    rows = []
    for backend in backends:
        fwd, bwd = bench_affine(backend, args.repeat)
        samp = bench_sampler(backend, args.repeat)
        batch = bench_train_batch(backend, args.repeat)
        rows.append((backend, fwd, bwd, samp, batch))

    print(f"{'backend':8} {'affine fwd':>12} {'affine bwd':>12} {'sampler':>12} {'train batch':>12}")
    for backend, fwd, bwd, samp, batch in rows:
        print(
            f"{backend:8} {fwd * 1e3:9.3f} ms {bwd * 1e3:9.3f} ms "
            f"{samp * 1e6:9.1f} us {batch * 1e3:9.1f} ms"
        )
    if len(rows) == 2:
        base = {r[0]: r for r in rows}
        for i, name in ((1, "affine fwd"), (2, "affine bwd"), (3, "sampler"), (4, "train batch")):
            ratio = base["py"][i] / base["c"][i]
            print(f"speedup c vs py, {name}: {ratio:.2f}x")


if __name__ == "__main__":
    main()
