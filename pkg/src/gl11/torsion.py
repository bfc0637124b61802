"""Turaev's surgery formula for Reidemeister-Franz torsion.

Only homomorphisms of the shape phi = (fourth power) o omega are
supported: with s_i the omega-image of the i-th meridian the formula's
variables become t_i = s_i^4, so every half-integer power turns into an
integer power of s_i and the whole expression is an honest rational
function of the images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MultiLaurent, RatFunc
from .alexander import Embedding, conway
from .errors import NotComputable, ValidationError
from .manifold import OmegaClass, SurgeryPresentation, _cyclotomic_value


@dataclass(frozen=True)
class ChargeVector:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(k) for k in self.entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _charge(p: SurgeryPresentation, k) -> ChargeVector:
    k = k if isinstance(k, ChargeVector) else ChargeVector(tuple(k))
    if len(k) != p.ncomponents:
        raise ValidationError("charge length must match the component count")
    return k


def tau_surgery(p: SurgeryPresentation, omega: OmegaClass, k, mode: str = "auto"):
    """Torsion of the surgered manifold for phi = (g -> g^4) o omega:

    (-1)^sigma+ * prod 1/(s_i^4 - 1) * prod s_i^(2 k_i) * Conway(s_1^2, ...)
    """
    k = _charge(p, k)
    if not omega.computable:
        raise NotComputable("some meridian image is the identity")
    images = list(omega.images)
    emb = Embedding(images)
    mons = [emb.monomial(g) for g in images]
    squared = [tuple(2 * x for x in emb.exponents(g)) for g in images]
    value = conway(p.diagram).map_monomials(squared, emb.nvars)
    charge_exp = [0] * emb.nvars
    for i, g in enumerate(images):
        e4 = mons[i] ** 4
        value = value * RatFunc(MultiLaurent.one(emb.nvars),
                                e4 - MultiLaurent.one(emb.nvars))
        for slot, x in enumerate(emb.exponents(g)):
            charge_exp[slot] += 2 * k[i] * x
    value = value * RatFunc(MultiLaurent.monomial(emb.nvars, charge_exp))
    if p.sigma_plus % 2:
        value = -value
    if mode == "symbolic":
        return value
    if mode == "cyclotomic":
        return _cyclotomic_value(value, omega, emb)
    if (not omega.group.formal and omega.group.has_torsion
            and not emb.free_slots):
        return _cyclotomic_value(value, omega, emb)
    return value


def torsion_relation_check(p: SurgeryPresentation, omega: OmegaClass, k,
                           mode: str = "symbolic"):
    """Verify tau = [prod s_i^(k_i - 1)]^2 * Delta(M, omega) exactly.

    Returns (holds, tau_value, expected_value).
    """
    from .manifold import delta_refined

    k = _charge(p, k)
    tau = tau_surgery(p, omega, k, mode=mode)
    emb = Embedding(list(omega.images))
    exps = [0] * emb.nvars
    for i, g in enumerate(omega.images):
        for slot, x in enumerate(emb.exponents(g)):
            exps[slot] += 2 * (k[i] - 1) * x
    delta = delta_refined(p, omega, mode=mode)
    if mode == "symbolic":
        expected = RatFunc(MultiLaurent.monomial(emb.nvars, exps)) * delta
    else:
        cyc = _cyclotomic_value(
            RatFunc(MultiLaurent.monomial(emb.nvars, exps)), omega, emb)
        expected = cyc * delta
    return tau == expected, tau, expected
