"""End-to-end existence analysis: config in, degree-theoretic verdicts out."""

from __future__ import annotations

import json
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from . import __version__
from .burnside import BurnsideElement
from .ccs import CcsTable, load_or_build
from .cyclo import Cyclo
from .degree import basic_degree, linear_iso_degree, maximal_orbit_types
from .errors import ConfigError, EvenN
from .groups import FiniteGroup, build_cyclic, build_dihedral, build_product, to_mask
from .reps import (
    RealIrrep,
    custom_gamma,
    custom_irreps,
    isotypic_decomposition,
    irreps_of,
    signed_irreps,
)
from .spectral import (
    _num,
    xi,
    DEFAULT_CLUSTER_TOL,
    DEFAULT_SIGN_TOL,
    DEFAULT_SYM_TOL,
    MuTable,
    SpectralProfile,
    circulant_mu,
    commuting_mu,
    frak_m_H,
    mu_table,
    spectral_profile,
    validate_delays,
)

REPORT_SCHEMA = "gdeg.report/1"
_D1Z_KLEIN = (0, 3)  # (1, 1) and (kappa, -1) inside D1 x Z2


# groups -------------------------------------------------------------------------


def klein() -> FiniteGroup:
    return build_product(build_dihedral(1), build_cyclic(2))


def full_group(gamma: FiniteGroup) -> FiniteGroup:
    """G = (D1 x Z2) x Gamma, built once per Gamma object."""
    G = gamma._cache.get("full_group")
    if G is None:
        G = gamma._cache.setdefault("full_group", build_product(klein(), gamma))
    return G


@lru_cache(maxsize=None)
def dihedral_gamma(n: int):
    """D_n with its real irreducibles, shared across analyses."""
    gamma = build_dihedral(n)
    return gamma, tuple(irreps_of(gamma))


@lru_cache(maxsize=None)
def trivial_gamma(n: int):
    gamma = custom_gamma(n, [list(range(1, n + 1))], name="Z1")
    return gamma, (RealIrrep(gamma, 1, (Cyclo.rational(1),), "U0", gamma_index=0),)


def parse_group_spec(spec: str) -> FiniteGroup:
    """``dihedral:N``, ``cyclic:N``, ``DN``, ``ZN``, ``trivial`` or ``product(A,B,...)``."""
    s = spec.replace(" ", "")
    low = s.lower()
    if low == "trivial":
        return build_cyclic(1)
    if low.startswith("product(") and s.endswith(")"):
        parts, depth, cur = [], 0, ""
        for ch in s[len("product("):-1]:
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            depth += (ch == "(") - (ch == ")")
            cur += ch
        parts.append(cur)
        if len(parts) < 2 or not all(parts):
            raise ConfigError(f"bad product spec {spec!r}")
        out = parse_group_spec(parts[0])
        for p in parts[1:]:
            out = build_product(out, parse_group_spec(p))
        return out
    for prefix, builder in (("dihedral:", build_dihedral), ("cyclic:", build_cyclic),
                            ("d", build_dihedral), ("z", build_cyclic)):
        if low.startswith(prefix) and low[len(prefix):].isdigit():
            return builder(int(low[len(prefix):]))
    raise ConfigError(f"unknown group spec {spec!r}")


def d1z_class(table: CcsTable) -> int:
    """Class of D1z x {e}."""
    G = table.group
    nb = G.factors[1].order
    e = G.factors[1].identity
    return table.index_of(to_mask(k * nb + e for k in _D1Z_KLEIN))


def contains_d1z(table: CcsTable, H: int) -> bool:
    # D1z x {e} is central, so containment does not depend on the representative
    G = table.group
    nb = G.factors[1].order
    e = G.factors[1].identity
    m = table[H].representative.mask
    return all((m >> (k * nb + e)) & 1 for k in _D1Z_KLEIN)


def h_s_subgroup(G: FiniteGroup, p: int) -> int:
    """(D1 x Z2)^{D1z} x_{Z2}^{Z_{n/p}} D_{n/p} as a bitmask of G = (D1 x Z2) x D_n."""
    D = G.factors[1]
    out = 0
    for i in range(4):
        twisted = i not in _D1Z_KLEIN
        for j, (a, e) in enumerate(D.labels):
            if a % p == 0 and e == int(twisted):
                out |= 1 << (i * D.order + j)
    return out


def odd_prime_divisors(n: int) -> list[int]:
    out, p = [], 3
    while n % 2 == 0:
        n //= 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


# config ---------------------------------------------------------------------------


@dataclass
class AnalysisConfig:
    group: dict
    delays: list
    matrices: dict
    tolerances: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    expected: dict | None = None

    @classmethod
    def from_dict(cls, d: Any) -> "AnalysisConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a mapping")
        known = {"group", "delays", "matrices", "tolerances", "output", "expected"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        for key in ("group", "delays", "matrices"):
            if key not in d:
                raise ConfigError(f"missing config key {key!r}")
        if not isinstance(d["group"], dict) or not isinstance(d["matrices"], dict):
            raise ConfigError("'group' and 'matrices' must be mappings")
        if not isinstance(d["delays"], list):
            raise ConfigError("'delays' must be a list")
        forms = [k for k in ("circulant", "mu_table", "dense") if k in d["matrices"]]
        if len(forms) != 1:
            raise ConfigError("exactly one of matrices.circulant / mu_table / dense is required")
        return cls(
            group=d["group"], delays=d["delays"], matrices=d["matrices"],
            tolerances=d.get("tolerances") or {}, output=d.get("output") or {},
            expected=d.get("expected"),
        )

    @classmethod
    def load(cls, path) -> "AnalysisConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        try:
            return cls.from_dict(yaml.safe_load(text))
        except yaml.YAMLError as exc:
            raise ConfigError(f"config is not valid YAML: {exc}") from None

    def tol(self, name: str, default: float) -> float:
        v = self.tolerances.get(name, default)
        try:
            return float(v)
        except (TypeError, ValueError):
            raise ConfigError(f"tolerance {name} must be a number") from None


# assembly -------------------------------------------------------------------------


@dataclass
class Setup:
    gamma: FiniteGroup
    G: FiniteGroup
    table: CcsTable
    components: list  # per mu-table column: (label, component index into pairs)
    pairs: list  # (plus, minus) RealIrrep per isotypic component of Gamma
    plus: list  # BasicDegree per pair
    minus: list
    mu: MuTable
    multiplicities: tuple


def _build_gamma(cfg: AnalysisConfig):
    g = cfg.group
    kind = str(g.get("type", "dihedral")).lower()
    if kind == "dihedral":
        n = g.get("n")
        if not isinstance(n, int) or n < 1:
            raise ConfigError("group.n must be a positive integer")
        if n % 2 == 0:
            raise EvenN(f"n = {n} is even; only odd n is supported")
        gamma, irreps = dihedral_gamma(n)
        return kind, gamma, list(irreps)
    if kind == "trivial":
        n = g.get("n", 1)
        if not isinstance(n, int) or n < 1:
            raise ConfigError("group.n must be a positive integer")
        gamma, irreps = trivial_gamma(n)
        return kind, gamma, list(irreps)
    if kind == "custom":
        n = g.get("n")
        gens = g.get("generators")
        chars = g.get("characters")
        if not isinstance(n, int) or not gens or not chars:
            raise ConfigError("custom group needs n, generators and characters")
        gamma = custom_gamma(n, gens, name=g.get("name"))
        return kind, gamma, custom_irreps(gamma, chars)
    raise ConfigError(f"unknown group type {kind!r}")


def _signed(gamma, irreps, G):
    key = ("signed", tuple(id(r) for r in irreps))
    hit = gamma._cache.get(key)
    if hit is None:
        decomp = isotypic_decomposition(gamma, list(irreps))
        hit = gamma._cache.setdefault(key, (decomp, signed_irreps(decomp, G)))
    return hit


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def build_setup(cfg: AnalysisConfig, cache_dir=None, jobs: int = 1) -> tuple[Setup, Any]:
    kind, gamma, irreps = _build_gamma(cfg)
    G = full_group(gamma)
    table = load_or_build(G, cache_dir, __version__)
    decomp, pairs = _signed(gamma, irreps, G)
    degs = _map(lambda r: basic_degree(r, table), [r for pm in pairs for r in pm], jobs)
    plus, minus = degs[0::2], degs[1::2]

    mats = cfg.matrices
    if "circulant" in mats:
        if kind != "dihedral":
            raise ConfigError("circulant matrices need a dihedral group")
        coeffs = mats["circulant"]
        if not isinstance(coeffs, list) or not all(isinstance(c, (list, tuple)) and len(c) == 2 for c in coeffs):
            raise ConfigError("matrices.circulant must be a list of [a_j, b_j] pairs")
        mu = circulant_mu([tuple(c) for c in coeffs], gamma.param)
        components = [(c.irrep.name, c.index) for c in decomp.components]
    elif "mu_table" in mats:
        spec = mats["mu_table"]
        rows = spec.get("rows") if isinstance(spec, dict) else spec
        given = spec.get("multiplicities") if isinstance(spec, dict) else None
        if not isinstance(rows, list):
            raise ConfigError("matrices.mu_table.rows must be a list of rows")
        if kind == "trivial":
            if given is None:
                raise ConfigError("a mu_table over the trivial group needs multiplicities")
            mu = mu_table(rows, given)
            if sum(mu.multiplicities) != gamma.degree:
                raise ConfigError(f"multiplicities sum to {sum(mu.multiplicities)}, expected n = {gamma.degree}")
            components = [(f"V{l + 1}", 0) for l in range(mu.components)]
        else:
            ms = [c.multiplicity for c in decomp.components]
            if given is not None and list(given) != ms:
                raise ConfigError(f"multiplicities {list(given)} disagree with the decomposition {ms}")
            mu = mu_table(rows, ms)
            if mu.components != len(decomp.components):
                raise ConfigError(f"mu table has {mu.components} columns, expected {len(decomp.components)}")
            components = [(c.irrep.name, c.index) for c in decomp.components]
    else:
        if kind != "trivial":
            raise ConfigError("dense matrices are only supported for the trivial group")
        mu = commuting_mu(mats["dense"], cfg.tol("cluster_tol", DEFAULT_CLUSTER_TOL))
        if any(len(A) != gamma.degree for A in mats["dense"]):
            raise ConfigError(f"dense matrices must be {gamma.degree} x {gamma.degree}")
        components = [(f"V{l + 1}", 0) for l in range(mu.components)]
    if mu.m != len(cfg.delays):
        raise ConfigError(f"{len(cfg.delays)} delays but {mu.m + 1} matrix rows (expected m + 1)")
    return Setup(gamma, G, table, components, pairs, plus, minus, mu, mu.multiplicities), decomp


def compute_omega(negative, setup: Setup) -> BurnsideElement:
    """(G) - prod deg_{U_l+}^nu (k >= 0) * prod deg_{U_l-}^nu (k >= 1)."""
    assignments = []
    for l, k, mult in negative:
        c = setup.components[l][1]
        assignments.append((setup.plus[c], mult))
        if k >= 1:
            assignments.append((setup.minus[c], mult))
    deg = linear_iso_degree(assignments, setup.table)
    return BurnsideElement.unit(setup.table) - deg


def x_o(table: CcsTable, H: int, minus_values) -> int | None:
    if not any(v.coeff(H) for v in minus_values):
        return 0
    return {2: 1, 1: 2}.get(table.weyl(H))


def _frak_m_per_column(negative, ncols):
    fm = [0] * ncols
    for l, k, mult in negative:
        if k >= 1:
            fm[l] += mult
    return fm


def existence_verdicts(omega, negative, setup: Setup, candidates, gap: bool = False) -> list[dict]:
    table = setup.table
    fm = _frak_m_per_column(negative, len(setup.components))
    minus_cols = [setup.minus[c].value for _, c in setup.components]
    out = []
    for H in candidates:
        mH = frak_m_H(H, minus_cols, fm)
        coeff = omega.coeff(H)
        xo = x_o(table, H, minus_cols)
        nonconst = contains_d1z(table, H)
        odd = mH % 2 == 1
        consistent = (not odd) or (xo is not None and coeff == xo and coeff != 0)
        if odd and coeff:
            concl = (f"non-constant periodic solution with orbit type exactly ({table[H].display(gap)})"
                     if nonconst else f"periodic solution with orbit type exactly ({table[H].display(gap)})")
        elif coeff:
            concl = (f"existence by nonzero coefficient: a solution with isotropy containing "
                     f"({table[H].display(gap)})" + (", non-constant" if nonconst else ""))
        else:
            concl = "method inconclusive"
        out.append({
            "orbit_type": table[H].display(gap),
            "class_index": H,
            "weyl_order": table.weyl(H),
            "frak_m_H": mH,
            "parity": "odd" if odd else "even",
            "coeff_omega": coeff,
            "x_o": xo,
            "nonconstant": nonconst,
            "theorem_consistent": consistent,
            "conclusion": concl,
        })
    return out


# reports ----------------------------------------------------------------------------


def fmt_value(v) -> dict:
    if isinstance(v, Cyclo):
        return {"exact": str(v), "approx": f"{float(v):.12g}"}
    return {"exact": None, "approx": f"{float(v):.12g}"}


def _pairs(x: BurnsideElement, gap: bool):
    return [[n, c] for n, c in x.pairs(gap)]


def _element(x: BurnsideElement, gap: bool) -> dict:
    return {"pairs": _pairs(x, gap), "text": x.render(gap)}


@dataclass
class ExistenceReport:
    document: dict
    status: str

    def to_json(self) -> str:
        return json.dumps(self.document, sort_keys=True, indent=2) + "\n"

    def to_machine(self) -> str:
        """Compact single-line JSON with sorted keys."""
        return json.dumps(self.document, sort_keys=True, separators=(",", ":")) + "\n"

    def to_text(self) -> str:
        return render_text(self.document)


def _negative_list(profile: SpectralProfile):
    return [(l, k, profile.nu[(l, k)]) for l, k in profile.negative]


def _printed_spectrum(cfg: AnalysisConfig, setup: Setup):
    entries = (cfg.expected or {}).get("spectrum") or []
    out = []
    for e in entries:
        try:
            l, k = int(e["l"]), int(e["k"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError("expected.spectrum entries need integer l and k") from None
        if not 0 <= l < len(setup.components) or k < 0:
            raise ConfigError(f"expected.spectrum entry (l={l}, k={k}) is out of range")
        val = _num(e.get("value", "-1"))
        if float(val) >= 0:
            raise ConfigError("expected.spectrum lists negative eigenvalues only")
        out.append((l, k, val))
    return sorted(out, key=lambda t: (t[0], t[1]))


def analyze(cfg: AnalysisConfig, audit: bool | None = None, gap: bool | None = None,
            cache_dir=None, jobs: int = 1) -> ExistenceReport:
    audit = bool(cfg.output.get("audit", False)) if audit is None else audit
    gap = bool(cfg.output.get("gap_compat", False)) if gap is None else gap
    cache_dir = cache_dir if cache_dir is not None else cfg.output.get("cache_dir")
    sym_tol = cfg.tol("sym_tol", DEFAULT_SYM_TOL)
    sign_tol = cfg.tol("sign_tol", DEFAULT_SIGN_TOL)

    delays = validate_delays(cfg.delays, sym_tol)
    setup, decomp = build_setup(cfg, cache_dir, jobs)
    mu = setup.mu.reorder_delays(delays.order)
    setup.mu = mu
    profile = spectral_profile(mu, delays, sign_tol, strict=not audit)
    table = setup.table
    degenerate = bool(profile.degenerate)

    minus_reps = [pm[1] for pm in setup.pairs]
    all_reps = [r for pm in setup.pairs for r in pm]
    max_minus = maximal_orbit_types(minus_reps, table)
    max_E = maximal_orbit_types(all_reps, table)
    negative = _negative_list(profile)
    notes: list[str] = []

    doc: dict[str, Any] = {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "group": {
            "descriptor": setup.G.descriptor,
            "gamma": setup.gamma.descriptor,
            "order": setup.G.order,
            "classes": len(table),
        },
        "isotypic_components": [
            {"l": l, "irrep": name, "multiplicity": setup.multiplicities[l]}
            for l, (name, _) in enumerate(setup.components)
        ],
        "delays": [str(t) for t in delays.taus],
        "mu_table": {
            "provenance": mu.provenance,
            "rows": [[fmt_value(v)["exact"] or fmt_value(v)["approx"] for v in row] for row in mu.mus],
        },
        "basic_degrees": {
            f"{pm[s].name}": _element(deg.value, gap)
            for pm, dp, dm in zip(setup.pairs, setup.plus, setup.minus)
            for s, deg in ((0, dp), (1, dm))
        },
        "maximal_types": {
            "U_minus": [table[i].display(gap) for i in max_minus],
            "E": [table[i].display(gap) for i in max_E],
        },
        "spectrum": {
            "k_max": profile.k_max,
            "exact": profile.exact,
            "sign_margin": None if profile.sign_margin == float("inf") else f"{profile.sign_margin:.12g}",
            "negative": [
                {"l": l, "k": k, "multiplicity": m, "xi": fmt_value(profile.xi[(l, k)])}
                for l, k, m in negative
            ],
            "degenerate": [{"l": l, "k": k} for l, k in profile.degenerate],
            "frak_m_l": list(profile.frak_m_l),
        },
    }

    if degenerate:
        l, k = profile.degenerate[0]
        notes.append(
            f"linearization is degenerate at (l={l}, k={k}); the isomorphism hypothesis fails and "
            "no verdict is drawn from the computed spectrum"
        )
        doc["omega"] = None
        doc["verdicts"] = []
        doc["h_s_family"] = []
        doc["non_equivariant"] = None
    else:
        omega = compute_omega(negative, setup)
        doc["omega"] = _element(omega, gap)
        verdicts = existence_verdicts(omega, negative, setup, max_minus, gap)
        doc["verdicts"] = verdicts
        for v in verdicts:
            if not v["theorem_consistent"]:
                notes.append(
                    f"({v['orbit_type']}): frak_m(H) = {v['frak_m_H']} is odd but coeff(omega) = "
                    f"{v['coeff_omega']} differs from x_o = {v['x_o']}"
                )
        doc["h_s_family"] = _h_s_family(setup, omega, negative, max_minus, max_E, gap, notes)
        doc["non_equivariant"] = _non_equivariant(setup, omega, profile, gap)

    if cfg.expected:
        _audit(cfg, setup, profile, delays, max_minus, max_E, gap, notes, doc, audit)

    doc["audit_notes"] = notes
    doc["status"] = "degenerate" if degenerate else "ok"
    return ExistenceReport(doc, doc["status"])


def _h_s_family(setup: Setup, omega, negative, max_minus, max_E, gap, notes):
    if setup.gamma.kind != "dihedral" or setup.gamma.param < 3:
        return []
    table = setup.table
    out = []
    for p in odd_prime_divisors(setup.gamma.param):
        H = table.index_of(h_s_subgroup(setup.G, p))
        v = existence_verdicts(omega, negative, setup, [H], gap)[0]
        v["p_s"] = p
        v["n_s"] = setup.gamma.param // p
        v["maximal_in_U_minus"] = H in max_minus
        v["maximal_in_E"] = H in max_E
        if H not in max_minus:
            notes.append(f"H_s for p = {p} ({v['orbit_type']}) is not a maximal orbit type of U-")
        out.append(v)
    return out


def _non_equivariant(setup: Setup, omega, profile: SpectralProfile, gap):
    if setup.gamma.order != 1:
        return None
    table = setup.table
    H = d1z_class(table)
    total = sum(profile.frak_m_l)
    coeff = omega.coeff(H)
    odd = total % 2 == 1
    xo = x_o(table, H, [d.value for d in setup.minus])
    return {
        "orbit_type": table[H].display(gap),
        "frak_m": total,
        "parity": "odd" if odd else "even",
        "coeff_omega": coeff,
        "x_o": xo,
        "theorem_consistent": (not odd) or coeff == xo,
        "conclusion": "non-constant periodic solution exists" if odd else
        ("existence by nonzero coefficient" if coeff else "method inconclusive"),
    }


def _audit(cfg, setup: Setup, profile: SpectralProfile, delays, max_minus, max_E, gap, notes, doc, audit):
    table = setup.table
    exp = cfg.expected or {}
    printed = _printed_spectrum(cfg, setup)
    if printed:
        pset = {(l, k) for l, k, _ in printed}
        tool = {}
        for l in range(len(setup.components)):
            for k in range(max([profile.k_max] + [k for _, k, _ in printed]) + 1):
                tool[(l, k)] = _sign_at(profile, setup.mu, delays, l, k)
        divergent = []
        for key in sorted(set(tool) | pset):
            printed_neg = key in pset
            s = tool.get(key, 1)
            if printed_neg != (s < 0):
                divergent.append(key)
                kind = {1: "positive", 0: "zero (degenerate)", -1: "negative"}[s]
                xi_val = _xi_at(profile, setup.mu, delays, *key)
                notes.append(
                    f"sign divergence at (l={key[0]}, k={key[1]}): printed "
                    f"{'negative' if printed_neg else 'not negative'}, computed xi = "
                    f"{fmt_value(xi_val)['exact'] or fmt_value(xi_val)['approx']} ({kind})"
                )
        for l, k, val in printed:
            xi_val = _xi_at(profile, setup.mu, delays, l, k)
            same = (xi_val == val) if isinstance(xi_val, Cyclo) and isinstance(val, Cyclo) \
                else abs(float(xi_val) - float(val)) <= 1e-9
            if not same:
                notes.append(
                    f"value divergence at (l={l}, k={k}): printed {val}, computed "
                    f"{fmt_value(xi_val)['exact'] or fmt_value(xi_val)['approx']}"
                )
        negative = [(l, k, setup.multiplicities[l]) for l, k, _ in printed]
        omega_p = compute_omega(negative, setup)
        doc["printed_spectrum"] = {
            "negative": [{"l": l, "k": k, "value": str(v)} for l, k, v in printed],
            "divergent": [{"l": l, "k": k} for l, k in divergent],
            "omega": _element(omega_p, gap),
            "verdicts": existence_verdicts(omega_p, negative, setup, max_minus, gap),
        }
    for key, found in (("maximal_types_U_minus", max_minus), ("maximal_types_E", max_E)):
        names = exp.get(key)
        if not names:
            continue
        idx = []
        for nm in names:
            try:
                idx.append(table.find(str(nm)))
            except KeyError:
                raise ConfigError(f"expected.{key}: unknown class name {nm!r}") from None
        if len(set(idx)) != len(idx):
            dup = sorted({table[i].display(gap) for i in idx if idx.count(i) > 1})
            notes.append(f"expected.{key} lists {', '.join(dup)} more than once")
        missing = sorted(set(found) - set(idx))
        extra = sorted(set(idx) - set(found))
        if missing or extra:
            notes.append(
                f"expected.{key} differs from the computed set: computed but not listed "
                f"{[table[i].display(gap) for i in missing]}, listed but not computed "
                f"{[table[i].display(gap) for i in extra]}"
            )
        else:
            notes.append(f"expected.{key} matches the computed set")


def _xi_at(profile: SpectralProfile, mu, delays, l, k):
    if (l, k) in profile.xi:
        return profile.xi[(l, k)]
    return xi(l, k, mu, delays)


def _sign_at(profile: SpectralProfile, mu, delays, l, k) -> int:
    if k <= profile.k_max:
        return profile.sign(l, k)
    return 1


# text rendering ----------------------------------------------------------------


def render_text(doc: dict) -> str:
    L = []
    g = doc["group"]
    L.append(f"gdeg {doc['version']} existence report ({doc['schema']})")
    L.append(f"group: G = (D1xZ2) x {g['gamma']}, |G| = {g['order']}, {g['classes']} classes of subgroups")
    L.append("isotypic components:")
    for c in doc["isotypic_components"]:
        L.append(f"  l={c['l']}: {c['irrep']}, m_l = {c['multiplicity']}")
    L.append("delays: " + ", ".join(doc["delays"]))
    L.append(f"mu table ({doc['mu_table']['provenance']}):")
    for j, row in enumerate(doc["mu_table"]["rows"]):
        L.append(f"  j={j}: " + "  ".join(row))
    L.append("basic degrees:")
    for name, el in doc["basic_degrees"].items():
        L.append(f"  deg[{name}] = {el['text']}")
    sp = doc["spectrum"]
    L.append(f"spectrum: k_max = {sp['k_max']}, {'exact' if sp['exact'] else 'floating-point'} arithmetic")
    if sp["negative"]:
        for e in sp["negative"]:
            val = e["xi"]["exact"] or e["xi"]["approx"]
            if e["xi"]["exact"] and "E(" in val:
                val = f"{val} ~ {e['xi']['approx']}"
            L.append(f"  xi[{e['l']},{e['k']}] = {val} < 0 (multiplicity {e['multiplicity']})")
    else:
        L.append("  no negative eigenvalues")
    for e in sp["degenerate"]:
        L.append(f"  xi[{e['l']},{e['k']}] = 0: degenerate")
    L.append("  frak_m_l = " + str(sp["frak_m_l"]))
    L.append("maximal orbit types in U-: " + ", ".join(f"({n})" for n in doc["maximal_types"]["U_minus"]))
    L.append("maximal orbit types in E: " + ", ".join(f"({n})" for n in doc["maximal_types"]["E"]))
    if doc["omega"] is not None:
        L.append("omega = " + doc["omega"]["text"])
        L.append("verdicts:")
        L.extend(_render_verdicts(doc["verdicts"]))
        if doc["h_s_family"]:
            L.append("H_s family:")
            for v in doc["h_s_family"]:
                L.append(f"  p_s = {v['p_s']}, n_s = {v['n_s']}:")
                L.extend("  " + s for s in _render_verdicts([v]))
        if doc["non_equivariant"]:
            v = doc["non_equivariant"]
            L.append(f"non-equivariant: frak_m = {v['frak_m']} ({v['parity']}), "
                     f"coeff at ({v['orbit_type']}) = {v['coeff_omega']}: {v['conclusion']}")
    else:
        L.append("omega: not computed (degenerate linearization)")
    if "printed_spectrum" in doc:
        ps = doc["printed_spectrum"]
        L.append("printed spectrum, side by side:")
        L.append("  negative: " + ", ".join(f"xi[{e['l']},{e['k']}] = {e['value']}" for e in ps["negative"]))
        L.append("  omega = " + ps["omega"]["text"])
        L.extend("  " + s for s in _render_verdicts(ps["verdicts"]))
    if doc["audit_notes"]:
        L.append("audit notes:")
        L.extend(f"  - {n}" for n in doc["audit_notes"])
    L.append(f"status: {doc['status']}")
    return "\n".join(L) + "\n"


def _render_verdicts(vs) -> list[str]:
    out = []
    for v in vs:
        out.append(
            f"  ({v['orbit_type']}): |W(H)| = {v['weyl_order']}, frak_m(H) = {v['frak_m_H']} "
            f"({v['parity']}), coeff(omega) = {v['coeff_omega']}, x_o = {v['x_o']}"
        )
        out.append(f"    -> {v['conclusion']}")
    return out
