"""Smoke test for the compiled extension: python smoke_test.py"""

import math

import optical_bloch as ob


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    p = ob.SystemParams(1.5, 0.5, omega=1.0, r3_tilde=1.0)
    assert ob.classify_regime(p) == "underdamped"
    assert ob.classify_regime(p.with_omega(0.1)) == "overdamped"

    r, rho = ob.equilibrium_state(p)
    close(rho.rho11, 0.785714, 5e-7)
    close(rho.trace(), 1.0, 1e-15)
    s = ob.steady_state(p)
    close(s.r3, r.r3, 1e-12)

    omega_r, best = ob.optimal_rabi(1.5, 0.5)
    close(omega_r, 1.1547, 1e-4)
    close(best, math.sqrt(1 / 3) / 4, 1e-12)

    sol = ob.Solution(p)
    assert sol.at(0.0).to_tuple() == (0.0, 0.0, 1.0)
    late = sol.at(60.0)
    close(late.r1, r.r1, 1e-10)

    times, states = ob.integrate(p, ob.BlochVector.ground(), 5.0, dt=1e-3)
    close(states[-1].r3, sol.at(times[-1]).r3, 1e-9)

    fig1 = ob.SystemParams(1.5, 0.5)
    close(ob.purity_excited_initial(fig1.with_omega(5.0), 1.2),
          ob.Solution(fig1.with_omega(5.0)).at(1.2).purity(), 1e-12)

    rho2 = ob.DensityMatrix(0.7, 0.3, complex(0.1, -0.2))
    back = rho2.to_bloch().to_density()
    close(abs(back.rho12 - rho2.rho12), 0.0, 1e-15)

    report = ob.validate_physicality(1.0, 3.0, 0.0)
    assert not report["physical"]
    assert any("2T1 >= T2 violated" in v for v in report["violations"])

    m = ob.sweep_omega_time(ob.SystemParams(1.5, 0.5, r3_tilde=1.0), 0.0, 6.0, 7, 4.0, 9, "chi")
    assert len(m.values) == 7 and len(m.values[0]) == 9
    assert m.quantize()[0][0] == 0

    assert "fig2a" in ob.figure_presets()
    f = ob.render_figure("fig3", 5, 4)
    assert f.y_label == "log10_t2"

    revivals = ob.detect_revivals(ob.SystemParams(1.5, 0.5, omega=4.0, r3_tilde=1.0), 20.0, threshold=0.01)
    assert sum(1 for _, _, persists in revivals if not persists) == 1

    try:
        ob.SystemParams(1.5, 0.5, r3_tilde=2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print(f"optical_bloch {ob.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
