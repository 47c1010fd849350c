"""Symbolic *-algebra of deformed-field words.

Generators are deformed smeared fields (possibly multi-leg), sharp-momentum
fields (kernel mode and oracle only), translation unitaries, and spectral
functions (finite combinations of translations).  Words are kept unreduced:
no commutation relation is applied symbolically; the functional evaluators and
the Fock oracle are the arbiters of operator identities.

A multi-leg field with fiber theta and an n-variable content h stands for

    integral h~(-p_1, ..., -p_n) phi~(p_1) ... phi~(p_n) U(-theta sum_j p_j),

i.e. a single trailing unitary.  This is the extension of the single-leg
deformed field under which the warped map is multiplicative with respect to
the twisted product (``warp(theta, rieffel_product(F, G, theta))`` equals the
operator product of the warped factors).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import OnShellMomentum, SkewMatrix, as_four, pdot, theta_contract
from .packets import GaussianPacket, TwistedProductFunction, twisted_tensor


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True, eq=False)
class FieldOp:
    """Smeared deformed field phi_theta(content); content may be multi-leg."""

    theta: SkewMatrix
    content: object  # GaussianPacket | TwistedProductFunction

    def __post_init__(self):
        if isinstance(self.content, GaussianPacket):
            object.__setattr__(
                self, "content", TwistedProductFunction.of(self.content, SkewMatrix.zero())
            )
        elif not isinstance(self.content, TwistedProductFunction):
            raise TypeError("field content must be a packet or a product function")

    @property
    def n_legs(self) -> int:
        return self.content.n_legs

    def key(self):
        return ("field", self.theta.m.tobytes(), self.content.key())


@dataclass(frozen=True, eq=False)
class SharpFieldOp:
    """Deformed field at a sharp on-shell momentum; kernel mode and oracle only."""

    theta: SkewMatrix
    p: OnShellMomentum

    def key(self):
        return ("sharp", self.theta.m.tobytes(), self.p.sign, self.p.k, self.p.m)


@dataclass(frozen=True, eq=False)
class TranslationOp:
    """Translation unitary U(x)."""

    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", as_four(self.x).astype(float))

    def key(self):
        return ("u", self.x.tobytes())


@dataclass(frozen=True, eq=False)
class SpectralFnOp:
    """Finite Fourier combination sum_k c_k U(x_k) of translation unitaries."""

    terms: tuple  # of (complex, 4-tuple)
    label: str = ""

    def __post_init__(self):
        ts = tuple(
            (complex(c), tuple(float(v) for v in as_four(x))) for (c, x) in self.terms
        )
        if not ts:
            raise ValueError("a spectral function needs at least one term")
        object.__setattr__(self, "terms", ts)

    def key(self):
        return ("spec", self.terms)


Generator = (FieldOp, SharpFieldOp, TranslationOp, SpectralFnOp)


def vacuum_projection_approximant(time_width: float, n_nodes: int = 9) -> SpectralFnOp:
    """Gaussian spectral cutoff approximating the vacuum projection.

    Realizes the energy window exp(-time_width^2 E^2 / 2) as a Gauss-Hermite
    discretization of a Gaussian average of time translations.  Self-adjoint
    by node symmetry; tends to the rank-one vacuum projection as
    time_width -> infinity, n_nodes -> infinity.
    """
    if time_width <= 0:
        raise ValueError("time_width must be positive")
    nodes, weights = np.polynomial.hermite.hermgauss(n_nodes)
    terms = [
        (w / np.sqrt(np.pi), (np.sqrt(2.0) * time_width * u, 0.0, 0.0, 0.0))
        for u, w in zip(nodes, weights)
    ]
    return SpectralFnOp(tuple(terms), label=f"vacuum_window(T={time_width},n={n_nodes})")


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True, eq=False)
class Monomial:
    coeff: complex
    word: tuple  # of generators

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        word = tuple(self.word)
        for g in word:
            if not isinstance(g, Generator):
                raise TypeError(f"not a generator: {g!r}")
        object.__setattr__(self, "word", word)

    def word_key(self):
        return tuple(g.key() for g in self.word)


class FieldPolynomial:
    """Finite linear combination of generator words, kept in canonical order."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict = {}
        order: list = []
        for t in terms:
            if not isinstance(t, Monomial):
                t = Monomial(*t)
            k = t.word_key()
            if k in merged:
                merged[k] = Monomial(merged[k].coeff + t.coeff, merged[k].word)
            else:
                merged[k] = t
                order.append(k)
        self.terms = tuple(
            merged[k] for k in sorted(order) if merged[k].coeff != 0
        )

    # -- constructors

    @staticmethod
    def unit() -> "FieldPolynomial":
        return FieldPolynomial([Monomial(1.0, ())])

    @staticmethod
    def zero() -> "FieldPolynomial":
        return FieldPolynomial([])

    @staticmethod
    def of(*gens, coeff: complex = 1.0) -> "FieldPolynomial":
        return FieldPolynomial([Monomial(coeff, tuple(gens))])

    # -- ring structure

    def __add__(self, other: "FieldPolynomial") -> "FieldPolynomial":
        return FieldPolynomial(self.terms + other.terms)

    def __sub__(self, other: "FieldPolynomial") -> "FieldPolynomial":
        return self + other.scaled(-1.0)

    def scaled(self, c: complex) -> "FieldPolynomial":
        return FieldPolynomial([Monomial(t.coeff * c, t.word) for t in self.terms])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scaled(other)
        return FieldPolynomial(
            [
                Monomial(a.coeff * b.coeff, a.word + b.word)
                for a in self.terms
                for b in other.terms
            ]
        )

    def __rmul__(self, c):
        return self.scaled(c)

    def __eq__(self, other):
        if not isinstance(other, FieldPolynomial):
            return NotImplemented
        return [(t.coeff, t.word_key()) for t in self.terms] == [
            (t.coeff, t.word_key()) for t in other.terms
        ]

    def __hash__(self):
        return hash(tuple((t.coeff, t.word_key()) for t in self.terms))

    def __repr__(self):
        return f"FieldPolynomial({len(self.terms)} terms)"


def unit() -> FieldPolynomial:
    return FieldPolynomial.unit()


def field(theta: SkewMatrix, content) -> FieldPolynomial:
    return FieldPolynomial.of(FieldOp(theta, content))


def sharp_field(theta: SkewMatrix, p: OnShellMomentum) -> FieldPolynomial:
    return FieldPolynomial.of(SharpFieldOp(theta, p))


def translation_unitary(x) -> FieldPolynomial:
    return FieldPolynomial.of(TranslationOp(np.asarray(x, dtype=float)))


# ---------------------------------------------------------------------------
# the *-operations


def _star_generator(g):
    if isinstance(g, FieldOp):
        return FieldOp(g.theta, g.content.conjugate())
    if isinstance(g, SharpFieldOp):
        # phi~_theta(p)* = phi~_theta(-p), no extra phase
        return SharpFieldOp(g.theta, OnShellMomentum(-g.p.sign, g.p.k, g.p.m))
    if isinstance(g, TranslationOp):
        return TranslationOp(-g.x)
    if isinstance(g, SpectralFnOp):
        return SpectralFnOp(
            tuple((np.conj(c), tuple(-v for v in x)) for (c, x) in g.terms),
            label=g.label,
        )
    raise TypeError(f"unknown generator {g!r}")


def star(poly: FieldPolynomial) -> FieldPolynomial:
    """Adjoint: antilinear, word-reversing involution."""
    return FieldPolynomial(
        [
            Monomial(np.conj(t.coeff), tuple(_star_generator(g) for g in reversed(t.word)))
            for t in poly.terms
        ]
    )


def translate(poly: FieldPolynomial, x) -> FieldPolynomial:
    """Adjoint action of U(x): shifts packets, phases sharp fields, fixes unitaries."""
    x = as_four(x)
    out = []
    for t in poly.terms:
        coeff = t.coeff
        word = []
        for g in t.word:
            if isinstance(g, FieldOp):
                word.append(FieldOp(g.theta, g.content.translated(x)))
            elif isinstance(g, SharpFieldOp):
                coeff = coeff * np.exp(1j * pdot(g.p.vector, x))
                word.append(g)
            else:
                word.append(g)
        out.append(Monomial(coeff, tuple(word)))
    return FieldPolynomial(out)


def heisenberg(poly: FieldPolynomial, t) -> FieldPolynomial:
    """Forward Heisenberg flow; complex t performs the analytic continuation."""
    dtype = complex if np.iscomplexobj(np.asarray(t)) else float
    x = np.array([t, 0.0, 0.0, 0.0], dtype=dtype)
    return translate(poly, x)


def _fuse_smeared(word) -> TwistedProductFunction | None:
    """Concatenate the contents of a pure FieldOp word into one product function."""
    factors = ()
    for g in word:
        factors = factors + g.content.factors
    return TwistedProductFunction(factors) if factors else None


def warp(theta: SkewMatrix, poly: FieldPolynomial) -> FieldPolynomial:
    """Warped convolution: relabel zero-fiber field polynomials to fiber theta.

    Linear and unit-preserving.  Each monomial's field content becomes a single
    multi-leg generator over theta (its internal twist structure is kept), so
    that the map is multiplicative with respect to the theta-twisted product.
    Translation and spectral generators are rejected.
    """
    if theta.is_zero:
        return poly
    out = []
    for t in poly.terms:
        for g in t.word:
            if isinstance(g, (TranslationOp, SpectralFnOp)):
                raise ValueError("warp is defined on field polynomials only")
            if isinstance(g, (FieldOp, SharpFieldOp)) and not g.theta.is_zero:
                raise ValueError("warp input must live over the zero fiber")
        kinds = {type(g) for g in t.word}
        if not t.word:
            out.append(t)
        elif kinds == {SharpFieldOp}:
            # a sharp word deforms with a compensating scalar phase so that the
            # whole word carries one trailing unitary
            ps = [g.p.vector for g in t.word]
            phase = 0.0
            for l in range(len(ps)):
                for r in range(l + 1, len(ps)):
                    phase += theta_contract(ps[l], theta, ps[r])
            word = tuple(SharpFieldOp(theta, g.p) for g in t.word)
            out.append(Monomial(t.coeff * np.exp(-1j * phase), word))
        elif kinds == {FieldOp}:
            fused = _fuse_smeared(t.word)
            out.append(Monomial(t.coeff, (FieldOp(theta, fused),)))
        else:
            raise ValueError("warp needs a pure sharp or pure smeared word")
    return FieldPolynomial(out)


def rieffel_product(
    f_poly: FieldPolynomial, g_poly: FieldPolynomial, theta: SkewMatrix
) -> FieldPolynomial:
    """Deformed product on the zero fiber induced by the twisted tensor product.

    Bilinear; unit on either side is neutral.  Smeared monomials must be
    single-leg or already carry ``theta`` internally (left-attached twist
    bookkeeping); sharp monomials pick up the scalar cross phase.
    """
    out = []
    for a in f_poly.terms:
        for b in g_poly.terms:
            for g in a.word + b.word:
                if isinstance(g, (TranslationOp, SpectralFnOp)):
                    raise ValueError("the deformed product is defined on field polynomials only")
                if not g.theta.is_zero:
                    raise ValueError("the deformed product lives on the zero fiber")
            coeff = a.coeff * b.coeff
            if not a.word or not b.word:
                out.append(Monomial(coeff, a.word + b.word))
                continue
            ka, kb = {type(g) for g in a.word}, {type(g) for g in b.word}
            if ka == {SharpFieldOp} and kb == {SharpFieldOp}:
                phase = sum(
                    theta_contract(ga.p.vector, theta, gb.p.vector)
                    for ga in a.word
                    for gb in b.word
                )
                out.append(Monomial(coeff * np.exp(1j * phase), a.word + b.word))
            elif ka == {FieldOp} and kb == {FieldOp}:
                left = _fuse_smeared(a.word)
                right = _fuse_smeared(b.word)
                out.append(
                    Monomial(coeff, (FieldOp(SkewMatrix.zero(), twisted_tensor(left, right, theta)),))
                )
            else:
                raise ValueError("cannot mix sharp and smeared content in one deformed product")
    return FieldPolynomial(out)


def expand_spectral(poly: FieldPolynomial) -> FieldPolynomial:
    """Distribute spectral-function generators into plain translation words."""
    out = []
    for t in poly.terms:
        partial = [(t.coeff, ())]
        for g in t.word:
            if isinstance(g, SpectralFnOp):
                partial = [
                    (c * ck, w + (TranslationOp(np.asarray(x)),))
                    for (c, w) in partial
                    for (ck, x) in g.terms
                ]
            else:
                partial = [(c, w + (g,)) for (c, w) in partial]
        out.extend(Monomial(c, w) for (c, w) in partial)
    return FieldPolynomial(out)


# ---------------------------------------------------------------------------
# document (de)serialization


def _num_to_doc(z):
    z = complex(z)
    return [z.real, z.imag] if z.imag != 0.0 else z.real


def _num_from_doc(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def _four_to_doc(v):
    return [_num_to_doc(c) for c in np.asarray(v)]


def _four_from_doc(v) -> np.ndarray:
    comps = [_num_from_doc(c) for c in v]
    arr = np.asarray(comps)
    return arr.real if not np.iscomplexobj(arr) or not arr.imag.any() else arr


def _theta_to_doc(theta: SkewMatrix, fiber_names: dict | None):
    if fiber_names:
        for name, mat in fiber_names.items():
            if mat == theta:
                return name
    return [[float(x) for x in row] for row in theta.m]


def _theta_from_doc(doc, fibers: dict | None) -> SkewMatrix:
    if isinstance(doc, str):
        if not fibers or doc not in fibers:
            raise ValueError(f"unknown fiber name {doc!r}")
        return fibers[doc]
    return SkewMatrix(np.asarray(doc, dtype=float))


def _packet_to_doc(p: GaussianPacket) -> dict:
    return {
        "x0": _four_to_doc(p.x0),
        "q0": _four_to_doc(p.q0),
        "width": p.width,
        "amplitude": _num_to_doc(p.amplitude),
    }


def _packet_from_doc(d: dict) -> GaussianPacket:
    return GaussianPacket(
        x0=_four_from_doc(d["x0"]),
        q0=_four_from_doc(d["q0"]),
        width=float(d["width"]),
        amplitude=_num_from_doc(d.get("amplitude", 1.0)),
    )


def polynomial_to_doc(poly: FieldPolynomial, fiber_names: dict | None = None) -> dict:
    terms = []
    for t in poly.terms:
        word = []
        for g in t.word:
            if isinstance(g, FieldOp):
                word.append(
                    {
                        "kind": "field",
                        "fiber": _theta_to_doc(g.theta, fiber_names),
                        "legs": [
                            {"packet": _packet_to_doc(f), "twist": _theta_to_doc(th, fiber_names)}
                            for (f, th) in g.content.factors
                        ],
                    }
                )
            elif isinstance(g, SharpFieldOp):
                word.append(
                    {
                        "kind": "sharp_field",
                        "fiber": _theta_to_doc(g.theta, fiber_names),
                        "sign": g.p.sign,
                        "k": list(g.p.k),
                        "mass": g.p.m,
                    }
                )
            elif isinstance(g, TranslationOp):
                word.append({"kind": "translation", "x": _four_to_doc(g.x)})
            elif isinstance(g, SpectralFnOp):
                word.append(
                    {
                        "kind": "spectral",
                        "label": g.label,
                        "terms": [
                            {"coeff": _num_to_doc(c), "x": list(x)} for (c, x) in g.terms
                        ],
                    }
                )
        terms.append({"coeff": _num_to_doc(t.coeff), "word": word})
    return {"format": "moyalkms-polynomial/1", "terms": terms}


def polynomial_from_doc(doc: dict, fibers: dict | None = None) -> FieldPolynomial:
    if doc.get("format", "moyalkms-polynomial/1") != "moyalkms-polynomial/1":
        raise ValueError(f"unsupported polynomial format {doc.get('format')!r}")
    out = []
    for t in doc["terms"]:
        word = []
        for g in t["word"]:
            kind = g["kind"]
            if kind == "field":
                factors = tuple(
                    (_packet_from_doc(leg["packet"]), _theta_from_doc(leg["twist"], fibers))
                    for leg in g["legs"]
                )
                word.append(
                    FieldOp(_theta_from_doc(g["fiber"], fibers), TwistedProductFunction(factors))
                )
            elif kind == "sharp_field":
                word.append(
                    SharpFieldOp(
                        _theta_from_doc(g["fiber"], fibers),
                        OnShellMomentum(int(g["sign"]), tuple(g["k"]), float(g["mass"])),
                    )
                )
            elif kind == "translation":
                word.append(TranslationOp(_four_from_doc(g["x"])))
            elif kind == "spectral":
                word.append(
                    SpectralFnOp(
                        tuple((_num_from_doc(s["coeff"]), tuple(s["x"])) for s in g["terms"]),
                        label=g.get("label", ""),
                    )
                )
            else:
                raise ValueError(f"unknown generator kind {kind!r}")
        word_out = tuple(word)
        out.append(Monomial(_num_from_doc(t["coeff"]), word_out))
    return FieldPolynomial(out)
