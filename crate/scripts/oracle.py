#!/usr/bin/env python3
"""Independent recomputation of model quantities from a scenario dump.

Usage: oracle.py SCENARIO.json

Reads only positions and parameters from the dump (never the Rust gains)
and prints the values the Rust test-suite freezes as expected results.
"""
import json
import math
import sys


def main(path):
    d = json.load(open(path))
    sc = d["scenario"]
    prop = sc["propagation"]
    users = d["users_km"]
    ants = d["antennas_km"]
    p_mw = 10 ** (sc["tx_power_dbm"] / 10)
    n_mw_hz = 10 ** ((sc["noise_density_dbm_hz"] + sc["noise_figure_db"]) / 10)
    dmin = prop["min_distance_m"] / 1000

    def gain(u, a):
        dist = max(math.hypot(u[0] - a[0], u[1] - a[1]), dmin)
        pl = prop["ref_loss_db"] + 10 * prop["path_loss_exponent"] * math.log10(dist)
        return 10 ** (-pl / 10)

    g = [[gain(u, a) for a in ants] for u in users]
    k_users, m_ants = len(users), len(ants)

    colsum = [math.fsum(g[k][j] for k in range(k_users)) for j in range(m_ants)]
    order = sorted(range(m_ants), key=lambda j: (-colsum[j], j))

    def rate(w_mhz, m, literal=False):
        sel = order[:m]
        w_hz = w_mhz * 1e6
        s = math.fsum(
            math.log2(1 + p_mw * math.fsum(g[k][j] for j in sel) / (n_mw_hz * w_hz))
            for k in range(k_users)
        )
        return s if literal else w_hz * s

    r0_all = p_mw * math.fsum(g[0])
    print(f"received_power_user0_all = {r0_all!r}")
    print(f"top20 = {sorted(order[:20])}")
    print(f"order20 = {order[:20]}")
    rate_50_64 = rate(50, 64)
    print(f"sum_rate_w50_m64 = {rate_50_64!r}")

    # split-PHY shared, balanced m_i over num_pons, B_p = 320, reference ratios
    r_wb = 0.1138 * 1350 / 20 * 1.278 / 1510
    r_bm = 1510 / (1900 * 12)
    c_b, c_w, c_m = 1.0, r_wb, 1.0 / r_bm
    n_p = d["num_pons"]
    m = 64
    m_i = [m // n_p + (1 if i < m % n_p else 0) for i in range(n_p)]
    lam = sum(-(-(mi * 10) // 320) for mi in m_i)
    cost = c_m * m + c_w * 50 + c_b * lam
    print(f"split_phy_w50_m64: wavelengths = {lam}, cost = {cost!r}, eta = {rate_50_64 / cost!r}")


if __name__ == "__main__":
    main(sys.argv[1])
