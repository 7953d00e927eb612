"""Identity suites and power reports driven by a :class:`~gec.scenario.Scenario`."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from . import randgen
from .cochain import coboundary, cup, pair, restrict
from .complex import boundary_chain, boundary_subcomplex, region_chain, transform_complex
from .currents import (
    boundary_current,
    contract_current,
    current_from_chain,
    force_functional_identity,
    monomial_test_forms,
)
from .electro import (
    ElectroConfig,
    IdentityViolation,
    field_strengths,
    maxwell_traction,
    power_chain_identity,
    power_chain_identity_discrete,
    total_power,
    variational_split,
    variational_stress,
)
from .magnetostatics import (
    axial_vector,
    cross,
    crosscheck_with_forms,
    curl,
    div,
    gradient,
    power_magneto,
)
from .scenario import Scenario, ScenarioError
from .serialize import rational_to_str
from .smoothform import de_rham, exterior_derivative, pullback, wedge
from .stress import (
    BodyForceField,
    TractionStressField,
    apply_traction,
    power_boundary_form,
    power_bulk_form,
    power_from_tractions,
    power_variational,
)


@dataclass
class Check:
    name: str
    anchor: str
    values: dict
    passed: bool
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        vals = {k: _fmt(v) for k, v in self.values.items()}
        keys = list(vals)
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "left": vals[keys[0]] if keys else None,
            "right": vals[keys[-1]] if keys else None,
            "values": vals,
            "pass": self.passed,
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class Report:
    seed: int
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timing: bool = False) -> dict:
        n_pass = sum(c.passed for c in self.checks)
        out = {
            "seed": self.seed,
            "checks": [c.to_json(timing) for c in self.checks],
            "summary": {
                "total": len(self.checks),
                "passed": n_pass,
                "failed": len(self.checks) - n_pass,
                "all_pass": self.passed,
            },
        }
        out.update(self.extra)
        return out


def _fmt(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, float)) or hasattr(v, "denominator"):
        return rational_to_str(v)
    return str(v)


class _Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def record(self, name: str, anchor: str, fn):
        """Run ``fn() -> (values, passed)`` and record it; exceptions count as failures."""
        t0 = time.perf_counter()
        try:
            values, passed = fn()
        except IdentityViolation as exc:
            values, passed = {"error": str(exc)}, False
        self.checks.append(Check(name, anchor, values, bool(passed), time.perf_counter() - t0))


def _all_equal(values: dict) -> bool:
    vals = list(values.values())
    return all(v == vals[0] for v in vals[1:])


def _eq_check(**values):
    return values, _all_equal(values)


# suites

def suite_dd(scn: Scenario, rng: random.Random, rec: _Recorder):
    K = scn.complex
    for k in range(2, K.dim + 1):
        for i in range(scn.cases):
            c = randgen.chain(rng, K, k)
            rec.record(f"boundary_squared_zero[k={k},#{i}]", "boundary of boundary vanishes",
                       lambda c=c: ({"terms": len(boundary_chain(boundary_chain(c)).coeffs)},
                                    boundary_chain(boundary_chain(c)).is_zero()))
    for r in range(0, K.dim - 1):
        for i in range(scn.cases):
            w = randgen.cochain(rng, K, r)
            rec.record(f"coboundary_squared_zero[r={r},#{i}]", "d o d = 0 on cochains",
                       lambda w=w: ({"terms": len(coboundary(coboundary(w)).values)},
                                    coboundary(coboundary(w)).is_zero()))
    d = scn.d
    for r in range(0, d - 1):
        for i in range(scn.cases):
            a = randgen.form(rng, d, r)
            rec.record(f"d_squared_zero[r={r},#{i}]", "d o d = 0 on forms",
                       lambda a=a: ({"terms": len(exterior_derivative(exterior_derivative(a)).terms)},
                                    exterior_derivative(exterior_derivative(a)).is_zero()))


def suite_stokes(scn: Scenario, rng: random.Random, rec: _Recorder):
    K = scn.complex
    for k in range(1, K.dim + 1):
        for i in range(scn.cases):
            w = randgen.cochain(rng, K, k - 1)
            c = randgen.chain(rng, K, k)
            rec.record(f"discrete_stokes[k={k},#{i}]", "pair(d w, c) = pair(w, boundary c)",
                       lambda w=w, c=c: _eq_check(lhs=pair(coboundary(w), c),
                                                  rhs=pair(w, boundary_chain(c))))
    D, _ = boundary_subcomplex(K)
    region = region_chain(K)
    for i in range(scn.cases):
        w = randgen.cochain(rng, K, K.dim - 1)
        rec.record(f"restriction_stokes[#{i}]", "restricted cochain on the boundary complex",
                   lambda w=w: _eq_check(via_restrict=pair(restrict(w, D), region_chain(D)),
                                         direct=pair(w, boundary_chain(region))))
    for r in range(0, K.dim):
        a = randgen.form(rng, scn.d, r, max_degree=2)
        rec.record(f"de_rham_cochain_map[r={r}]", "de Rham map commutes with d",
                   lambda a=a: ({"equal": de_rham(exterior_derivative(a), K) == coboundary(de_rham(a, K))},
                                de_rham(exterior_derivative(a), K) == coboundary(de_rham(a, K))))


def suite_leibniz(scn: Scenario, rng: random.Random, rec: _Recorder):
    K = scn.complex
    for i in range(scn.cases):
        p = rng.randint(0, K.dim - 1)
        q = rng.randint(0, K.dim - 1 - p)
        a, b = randgen.cochain(rng, K, p), randgen.cochain(rng, K, q)

        def check(a=a, b=b, p=p):
            lhs = coboundary(cup(a, b))
            rhs = cup(coboundary(a), b) + cup(a, coboundary(b)) * (-1) ** p
            return {"equal": lhs == rhs}, lhs == rhs
        rec.record(f"cup_leibniz[p={p},q={q},#{i}]", "d(a cup b) = da cup b + (-1)^p a cup db", check)
    d = scn.d
    for i in range(scn.cases):
        p = rng.randint(0, d - 1)
        q = rng.randint(0, d - 1 - p)
        a, b = randgen.form(rng, d, p), randgen.form(rng, d, q)

        def check(a=a, b=b, p=p):
            lhs = exterior_derivative(wedge(a, b))
            rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)) * (-1) ** p
            return {"equal": lhs == rhs}, lhs == rhs
        rec.record(f"wedge_leibniz[p={p},q={q},#{i}]", "d(a ^ b) = da ^ b + (-1)^p a ^ db", check)


def suite_smooth_algebra(scn: Scenario, rng: random.Random, rec: _Recorder):
    d = scn.d
    for i in range(scn.cases):
        p = rng.randint(0, d)
        q = rng.randint(0, d - p)
        a, b = randgen.form(rng, d, p), randgen.form(rng, d, q)
        rec.record(f"graded_commutativity[#{i}]", "a ^ b = (-1)^pq b ^ a",
                   lambda a=a, b=b, p=p, q=q: ({"equal": wedge(a, b) == wedge(b, a) * (-1) ** (p * q)},
                                               wedge(a, b) == wedge(b, a) * (-1) ** (p * q)))
        s = rng.randint(0, d - p - q)
        c = randgen.form(rng, d, s)
        rec.record(f"associativity[#{i}]", "(a ^ b) ^ c = a ^ (b ^ c)",
                   lambda a=a, b=b, c=c: ({"equal": wedge(wedge(a, b), c) == wedge(a, wedge(b, c))},
                                          wedge(wedge(a, b), c) == wedge(a, wedge(b, c))))
        phi = randgen.affine_map(rng, d)
        rec.record(f"pullback_wedge[#{i}]", "pullback commutes with ^",
                   lambda a=a, b=b, phi=phi: _eq_bool(pullback(wedge(a, b), phi),
                                                      wedge(pullback(a, phi), pullback(b, phi))))
        if p < d:
            rec.record(f"pullback_d[#{i}]", "pullback commutes with d",
                       lambda a=a, phi=phi: _eq_bool(pullback(exterior_derivative(a), phi),
                                                     exterior_derivative(pullback(a, phi))))


def _eq_bool(x, y):
    return {"equal": x == y}, x == y


def _fields(scn: Scenario, rng: random.Random, n: int):
    """Scenario fields first (when given), then ``n`` random (g, alpha) pairs."""
    d, r = scn.d, scn.r
    out = []
    if scn.g is not None and scn.alpha is not None:
        out.append(("scenario", scn.g, scn.alpha))
    for i in range(n):
        out.append((f"random#{i}", randgen.form(rng, d, d - r - 1, max_degree=2),
                    randgen.form(rng, d, r, max_degree=2)))
    return out


def _require_exact(scn: Scenario):
    for f in (scn.g, scn.alpha):
        if f is not None and not f.is_exact():
            raise ScenarioError("non-polynomial fields are only supported by the power report")


def suite_maxwell(scn: Scenario, rng: random.Random, rec: _Recorder):
    cfg = scn.cfg
    for label, g, alpha in _fields(scn, rng, scn.cases):
        def check(g=g, alpha=alpha):
            fs = field_strengths(alpha, g, cfg)
            return {"F_degree": fs.F.degree, "J_degree": fs.J.degree}, True
        rec.record(f"maxwell_closure[{label}]", "dF = 0 and dJ = 0", check)


def suite_emforces(scn: Scenario, rng: random.Random, rec: _Recorder):
    cfg, K = scn.cfg, scn.complex
    anchor = "boundary power = bulk power = split power"
    if scn.mode == "discrete":
        pairs = []
        if scn.g is not None and scn.alpha is not None:
            pairs.append(("scenario", de_rham(scn.g, K), de_rham(scn.alpha, K)))
        for i in range(scn.cases):
            pairs.append((f"random#{i}", randgen.cochain(rng, K, cfg.maxwell_degree),
                          randgen.cochain(rng, K, cfg.r)))
        for label, g, alpha in pairs:
            def check(g=g, alpha=alpha):
                pc = power_chain_identity_discrete(K, g, alpha, cfg, check=False)
                return {"boundary": pc.boundary, "bulk": pc.bulk, "split": pc.split}, pc.holds
            rec.record(f"emforces_discrete[{label}]", anchor, check)
        return
    for label, g, alpha in _fields(scn, rng, scn.cases):
        def check(g=g, alpha=alpha):
            pc = power_chain_identity(K, g, alpha, cfg, check=False)
            return {"boundary": pc.boundary, "bulk": pc.bulk, "split": pc.split}, pc.holds
        rec.record(f"emforces[{label}]", anchor, check)


def suite_decomposition(scn: Scenario, rng: random.Random, rec: _Recorder):
    cfg, K = scn.cfg, scn.complex
    for label, g, alpha in _fields(scn, rng, scn.cases):
        def check(g=g, alpha=alpha):
            s0, s1 = variational_split(g, alpha, cfg)
            flux = apply_traction(maxwell_traction(g, cfg), alpha)
            ok = s0 + s1 == exterior_derivative(flux)
            return {"equal": ok}, ok
        rec.record(f"variational_split[{label}]", "S0(alpha) + S1(d alpha) = d(sigma(alpha))", check)

        def power(g=g, alpha=alpha):
            sigma = maxwell_traction(g, cfg)
            vals = {
                "boundary": power_boundary_form(K, None, sigma, alpha),
                "variational": power_variational(K, variational_stress(g, cfg), alpha),
            }
            return vals, _all_equal(vals)
        rec.record(f"virtual_power[{label}]", "total power = integral of S(j alpha)", power)


def suite_stress(scn: Scenario, rng: random.Random, rec: _Recorder):
    K, d, r = scn.complex, scn.d, scn.r
    cases = []
    if scn.b is not None or scn.sigma is not None:
        v = scn.alpha if scn.alpha is not None else randgen.form(rng, d, r, max_degree=2)
        cases.append(("scenario", scn.b, scn.sigma, v))
    for i in range(scn.cases):
        b = BodyForceField(d, r, ((randgen.multivector(rng, d, r, 1), randgen.form(rng, d, d, 1)),))
        sigma = TractionStressField(d, r, ((randgen.multivector(rng, d, r, 1),
                                            randgen.form(rng, d, d - 1, 2)),))
        cases.append((f"random#{i}", b, sigma, randgen.form(rng, d, r, max_degree=2)))
    for label, b, sigma, v in cases:
        def check(b=b, sigma=sigma, v=v):
            vals = {"boundary": power_boundary_form(K, b, sigma, v),
                    "bulk": power_bulk_form(K, b, sigma, v)}
            if sigma is not None:
                vals["tractions"] = power_from_tractions(K, b, sigma, v)
            return vals, _all_equal(vals)
        rec.record(f"stress_power[{label}]", "boundary power = bulk power", check)


def suite_currents(scn: Scenario, rng: random.Random, rec: _Recorder):
    cfg, K, d, r = scn.cfg, scn.complex, scn.d, scn.r
    g = scn.g if scn.g is not None else randgen.form(rng, d, d - r - 1, max_degree=2)
    basis = list(monomial_test_forms(d, r, scn.test_degree))
    report = force_functional_identity(K, g, basis, cfg, check=False)
    for i, row in enumerate(report.rows):
        rec.record(f"force_current[basis#{i}]", "F_R = dR _| g = R _| J + sign d(R _| g)",
                   lambda row=row: ({"total": row.total, "boundary_current": row.boundary_form,
                                     "split_current": row.split_form}, row.holds))
    region = current_from_chain(region_chain(K), K)
    for i in range(min(scn.cases, 3)):
        psi = randgen.form(rng, d, d - 1, max_degree=2)
        rec.record(f"current_boundary[#{i}]", "dR(psi) = R(d psi)",
                   lambda psi=psi: _eq_check(boundary=boundary_current(region)(psi),
                                             bulk=region(exterior_derivative(psi))))
        p = rng.randint(0, d - 1)
        phi = randgen.form(rng, d, p, max_degree=1)
        q = rng.randint(0, d - p)
        chi = randgen.form(rng, d, q, max_degree=1)
        omega = randgen.form(rng, d, d - p - q, max_degree=1)
        rec.record(f"contraction_composition[#{i}]", "(T _| phi) _| chi = T _| (phi ^ chi)",
                   lambda phi=phi, chi=chi, omega=omega: _eq_check(
                       nested=contract_current(contract_current(region, phi), chi)(omega),
                       wedged=contract_current(region, wedge(phi, chi))(omega)))


def suite_magnetostatics(scn: Scenario, rng: random.Random, rec: _Recorder):
    if scn.d != 3:
        return
    K = scn.complex
    pairs = []
    if scn.g_vec is not None and scn.w is not None:
        pairs.append(("scenario", scn.g_vec, scn.w))
    for i in range(scn.cases):
        pairs.append((f"random#{i}", randgen.vector_field(rng, 2), randgen.vector_field(rng, 2)))
    for label, g, w in pairs:
        def check(g=g, w=w):
            mp = power_magneto(K, g, w, check=False)
            return {"surface": mp.surface, "divergence": mp.divergence,
                    "two_term": mp.two_term, "current_form": mp.current_form}, mp.holds
        rec.record(f"magneto_power[{label}]", "Gauss theorem with div(g x w) identity", check)
    for i in range(scn.cases):
        sigma = randgen.skew_stress(rng)
        w = randgen.vector_field(rng, 2)
        rec.record(f"axial_vector[#{i}]", "sigma^T w = g x w",
                   lambda sigma=sigma, w=w: _eq_bool(sigma.transpose_apply(w), cross(axial_vector(sigma), w)))
        v = randgen.vector_field(rng, 3)
        f = randgen.poly(rng, 3, 3)
        rec.record(f"div_curl[#{i}]", "div curl = 0 and curl grad = 0",
                   lambda v=v, f=f: ({"div_curl_zero": div(curl(v)).is_zero(),
                                      "curl_grad_zero": curl(gradient(f)).is_zero()},
                                     div(curl(v)).is_zero() and curl(gradient(f)).is_zero()))


def suite_crosscheck(scn: Scenario, rng: random.Random, rec: _Recorder):
    if scn.d != 3 or scn.r != 1:
        return
    K = scn.complex
    pairs = []
    if scn.g_vec is not None and scn.w is not None:
        pairs.append(("scenario", scn.g_vec, scn.w))
    for i in range(scn.cases):
        pairs.append((f"random#{i}", randgen.vector_field(rng, 2), randgen.vector_field(rng, 2)))
    for label, g, w in pairs:
        def check(g=g, w=w):
            rep = crosscheck_with_forms(K, g, w, cfg=scn.cfg, check=False)
            return {"vector_calculus": rep.magneto.surface, "forms": rep.forms_power,
                    "curl_matches": rep.faraday_matches_curl and rep.current_matches_curl}, rep.holds
        rec.record(f"crosscheck[{label}]", "vector calculus agrees with forms at d=3, r=1", check)


def power_scalars(K, g, alpha, cfg: ElectroConfig) -> dict:
    """Every power expression available for one (region, g, alpha)."""
    pc = power_chain_identity(K, g, alpha, cfg, check=False)
    sigma = maxwell_traction(g, cfg)
    region = current_from_chain(region_chain(K), K)
    return {
        "boundary": pc.boundary,
        "bulk": pc.bulk,
        "split": pc.split,
        "total": total_power(K, g, alpha, cfg),
        "stress_boundary": power_boundary_form(K, None, sigma, alpha),
        "current_form": contract_current(boundary_current(region), g)(alpha),
    }


def suite_affine(scn: Scenario, rng: random.Random, rec: _Recorder):
    cfg, K, d = scn.cfg, scn.complex, scn.d
    fields = _fields(scn, rng, 1)[:1]
    _, g, alpha = fields[0]
    base = power_scalars(K, g, alpha, cfg)
    for i in range(scn.cases):
        phi = randgen.affine_map(rng, d)

        def check(phi=phi):
            moved = transform_complex(K, phi.inverse())
            new = power_scalars(moved, pullback(g, phi), pullback(alpha, phi), cfg)
            vals = {f"before_{k}": v for k, v in base.items()}
            vals.update({f"after_{k}": v for k, v in new.items()})
            return vals, all(base[k] == new[k] for k in base)
        rec.record(f"affine_invariance[#{i}]", "power unchanged by affine change of coordinates", check)


SUITES = {
    "dd": suite_dd,
    "stokes": suite_stokes,
    "leibniz": suite_leibniz,
    "smooth_algebra": suite_smooth_algebra,
    "maxwell": suite_maxwell,
    "emforces": suite_emforces,
    "decomposition": suite_decomposition,
    "stress": suite_stress,
    "currents": suite_currents,
    "magnetostatics": suite_magnetostatics,
    "crosscheck": suite_crosscheck,
    "affine": suite_affine,
}


def run_verification(scn: Scenario) -> Report:
    """Run the scenario's suites in order; each suite gets its own seeded RNG."""
    _require_exact(scn)
    rec = _Recorder()
    for name in scn.suites:
        rng = random.Random(f"{scn.seed}:{name}")
        SUITES[name](scn, rng, rec)
    return Report(seed=scn.seed, checks=rec.checks,
                  extra={"scenario": {"mode": scn.mode, "d": scn.d, "r": scn.r,
                                      "suites": list(scn.suites),
                                      "inject_sign_error": scn.inject_sign_error}})


# power report

def power_report(scn: Scenario) -> dict:
    """All power expressions for the scenario's fields, plus a refinement table
    when ``scn.refine`` lists box subdivisions."""
    cfg, K = scn.cfg, scn.complex
    out: dict = {"mode": scn.mode, "d": scn.d, "r": scn.r}
    if scn.mode in ("magnetostatics", "crosscheck"):
        rng = random.Random(f"{scn.seed}:power")
        g = scn.g_vec or randgen.vector_field(rng, 2)
        w = scn.w or randgen.vector_field(rng, 2)
        mp = power_magneto(K, g, w, check=False)
        out["powers"] = {"surface": _fmt(mp.surface), "divergence": _fmt(mp.divergence),
                         "two_term": _fmt(mp.two_term), "current_form": _fmt(mp.current_form)}
        if scn.mode == "crosscheck":
            out["powers"]["forms"] = _fmt(crosscheck_with_forms(K, g, w, check=False).forms_power)
        out["all_equal"] = len(set(out["powers"].values())) == 1
        return out
    if scn.g is None or scn.alpha is None:
        raise ScenarioError("the power report needs fields 'g' and 'alpha'")
    g, alpha = scn.g, scn.alpha
    if scn.refine:
        out["convergence"] = convergence_table(scn)
        return out
    if not (g.is_exact() and alpha.is_exact()):
        raise ScenarioError("non-polynomial fields need refinement levels ('refine')")
    if scn.mode == "discrete":
        pc = power_chain_identity_discrete(K, de_rham(g, K), de_rham(alpha, K), cfg, check=False)
        vals = {"boundary": pc.boundary, "bulk": pc.bulk, "split": pc.split}
    else:
        s = power_scalars(K, g, alpha, cfg)
        vals = {k: s[k] for k in ("boundary", "bulk", "split", "current_form")}
    out["powers"] = {k: _fmt(v) for k, v in vals.items()}
    out["all_equal"] = _all_equal(vals)
    return out


def _negligible(row) -> bool:
    """Gap already at round-off level (polynomial fields integrate exactly)."""
    return row["gap"] <= 1e-12 * max(1.0, abs(row["bulk"]))


def convergence_table(scn: Scenario) -> dict:
    """Boundary vs bulk power under box refinement, with observed orders."""
    cfg = scn.cfg
    sigma = maxwell_traction(scn.g, cfg)
    rows = []
    for n in scn.refine:
        K = scn.mesh_for(n)
        bnd = float(power_boundary_form(K, None, sigma, scn.alpha, order=scn.quadrature_order))
        blk = float(power_bulk_form(K, None, sigma, scn.alpha, order=scn.quadrature_order))
        rows.append({"subdivisions": n, "h": 1.0 / n, "boundary": bnd, "bulk": blk,
                     "gap": abs(bnd - blk)})
    for prev, cur in zip(rows, rows[1:]):
        if prev["gap"] > 0 and cur["gap"] > 0:
            cur["observed_order"] = math.log(prev["gap"] / cur["gap"]) / math.log(prev["h"] / cur["h"])
    orders = [r["observed_order"] for r in rows if "observed_order" in r]
    return {
        "levels": rows,
        "quadrature_order": scn.quadrature_order,
        "min_observed_order": min(orders) if orders else None,
        "gap_decreasing": all(b["gap"] < a["gap"] or _negligible(b) for a, b in zip(rows, rows[1:])),
    }
