"""Ergodic capacity against array size, and where the two modes cross.

A signal decoded in the presence of the other superposed signal saturates
at log2(1 + split ratio) no matter how strong the channel gets; a signal
decoded after interference cancellation keeps gaining with L.  As the
array grows the communication-oriented mode therefore overtakes the
navigation-oriented one on the uni-cast stream.
"""

import math

from inaclink import McConfig, ScenarioConfig, capacity_hardened, mc_capacity


def main() -> None:
    cfg = ScenarioConfig()
    mc = McConfig(trials=2_000, master_seed=12345)

    print("hardened uni-cast capacity (bps/Hz) vs number of RIS elements")
    print(f"  {'L':>6}  {'CO mode':>9}  {'NO mode':>9}  {'CO - NO':>9}  {'NO mc':>9}")
    for L in cfg.sweep_elements_cap:
        co = capacity_hardened(cfg.scenario(elements=L), "unicast")
        no = capacity_hardened(cfg.scenario(mode="NO", elements=L), "unicast")
        est = mc_capacity(cfg.scenario(mode="NO", elements=L), "unicast", mc)
        print(f"  {L:>6}  {co:>9.4f}  {no:>9.4f}  {co - no:>+9.4f}  {est.mean:>9.4f}")
    print()

    print("interference-limited ceilings (independent of power and L):")
    co_m = cfg.scenario()
    no_u = cfg.scenario(mode="NO")
    print(f"  CO multi-cast: log2(1 + {co_m.split.alpha_m_sq:.1f}/{co_m.split.alpha_u_sq:.1f})"
          f" = {math.log2(1.0 + co_m.split.alpha_m_sq / co_m.split.alpha_u_sq):.4f}")
    print(f"  NO uni-cast:   log2(1 + {no_u.split.alpha_u_sq:.1f}/{no_u.split.alpha_m_sq:.1f})"
          f" = {math.log2(1.0 + no_u.split.alpha_u_sq / no_u.split.alpha_m_sq):.4f}")
    big = McConfig(trials=20_000, master_seed=12345)
    strong = cfg.scenario(elements=1024).with_tx_power(1e7)
    strong_no = cfg.scenario(mode="NO", elements=1024).with_tx_power(1e7)
    print("  Monte Carlo at L=1024 and extreme power:"
          f" CO multi-cast {mc_capacity(strong, 'multicast', big).mean:.4f},"
          f" NO uni-cast {mc_capacity(strong_no, 'unicast', big).mean:.4f}")


if __name__ == "__main__":
    main()
