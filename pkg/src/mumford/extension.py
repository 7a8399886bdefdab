"""Extensions ``0 -> T -> N -> W -> 1`` and their factor sets.

The factor set of a section ``alpha`` (with ``alpha(e) = e``) is

    f(w1, w2) = embed^-1( alpha(w1) alpha(w2) alpha(w1 w2)^-1 ),

which inverts :func:`build_extension` under the coboundary convention of
:mod:`mumford.cohomology`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .abelian import FinAbGroup
from .cohomology import Cochain, CohClass, h2, is_cocycle, is_normalized
from .group import FiniteGroup, GAction, _extend_hom, twisted_product


class ExtensionError(ValueError):
    pass


@dataclass(eq=False)
class Extension:
    """``N`` with ``embed[index(t)]`` (an index of N) and ``project[n]`` (an index of W)."""

    N: FiniteGroup
    T: FinAbGroup
    W: FiniteGroup
    embed: list
    project: list
    sigma: GAction
    section: list = field(default=None)
    name: str = "N"

    def __post_init__(self):
        if self.section is None:
            self.section = default_section(self)
        self._embed_inv = {n: i for i, n in enumerate(self.embed)}
        self._t_elems = list(self.T.elements())

    def embed_t(self, t) -> int:
        return self.embed[self.T.index(t)]

    def from_kernel(self, n: int):
        """``embed^-1(n)``; raises if ``n`` is not in the image of ``T``."""
        try:
            return self._t_elems[self._embed_inv[n]]
        except KeyError:
            raise ExtensionError(f"element {n} of N is not in the image of T") from None

    def in_kernel(self, n: int) -> bool:
        return n in self._embed_inv

    def check(self) -> None:
        """Exactness and compatibility of the induced action with ``sigma``."""
        N, W, T = self.N, self.W, self.T
        if len(set(self.embed)) != T.order:
            raise ExtensionError("embedding is not injective")
        elems = self._t_elems
        for a in elems:
            for b in elems:
                if self.embed_t(T.add(a, b)) != N.mul[self.embed_t(a)][self.embed_t(b)]:
                    raise ExtensionError("embedding is not a homomorphism")
        for a in range(N.order):
            for b in range(N.order):
                if self.project[N.mul[a][b]] != W.mul[self.project[a]][self.project[b]]:
                    raise ExtensionError("projection is not a homomorphism")
        if set(self.project) != set(range(W.order)):
            raise ExtensionError("projection is not surjective")
        kernel = {n for n in range(N.order) if self.project[n] == W.identity}
        if kernel != set(self.embed):
            raise ExtensionError("image of T is not the kernel of the projection")
        for n in range(N.order):
            w = self.project[n]
            for t in elems:
                got = self.from_kernel(N.conj(n, self.embed_t(t)))
                if got != self.sigma.apply(w, t):
                    raise ExtensionError("conjugation does not induce sigma")

    def factor_set(self, section=None) -> Cochain:
        alpha = self.section if section is None else section
        N, W = self.N, self.W
        if alpha[W.identity] != N.identity:
            raise ExtensionError("sections must send e to e")
        n = W.order
        table = []
        for w1 in range(n):
            for w2 in range(n):
                x = N.mul[N.mul[alpha[w1]][alpha[w2]]][N.inv[alpha[W.mul[w1][w2]]]]
                table.append(self.from_kernel(x))
        return Cochain(2, tuple(table))

    def sections(self):
        """All sections with ``alpha(e) = e``."""
        fibres = [[n for n in range(self.N.order) if self.project[n] == w] for w in range(self.W.order)]
        fibres[self.W.identity] = [self.N.identity]
        for choice in itertools.product(*fibres):
            yield list(choice)


def default_section(E: Extension) -> list:
    """Lexicographically first preimage of every ``w``, with ``e -> e``."""
    sec = [None] * E.W.order
    for n in range(E.N.order):
        w = E.project[n]
        if sec[w] is None:
            sec[w] = n
    sec[E.W.identity] = E.N.identity
    return sec


def induced_action(N: FiniteGroup, T: FinAbGroup, W: FiniteGroup, embed, project) -> GAction:
    """The action of ``W`` on ``T`` by conjugation in ``N`` (checked to be independent
    of the preimage chosen)."""
    inv = {n: t for t, n in zip(T.elements(), embed)}
    basis = [tuple(int(i == j) for j in range(T.rank)) for i in range(T.rank)]
    mats = [None] * W.order
    for n in range(N.order):
        w = project[n]
        cols = tuple(inv[N.conj(n, embed[T.index(b)])] for b in basis)
        if mats[w] is None:
            mats[w] = cols
        elif mats[w] != cols:
            raise ExtensionError("conjugation action depends on the preimage; T is not central in the kernel")
    return GAction(W, T, mats)


def from_maps(N: FiniteGroup, T: FinAbGroup, W: FiniteGroup, embed, project, name="N") -> Extension:
    sigma = induced_action(N, T, W, embed, project)
    E = Extension(N, T, W, list(embed), list(project), sigma, name=name)
    E.check()
    return E


def build_extension(T: FinAbGroup, W: FiniteGroup, sigma: GAction, f: Cochain | None = None,
                    name="N") -> Extension:
    """The extension with factor set ``f`` (a normalized 2-cocycle); the split
    extension when ``f`` is ``None``."""
    if f is not None:
        if f.degree != 2 or len(f) != W.order ** 2:
            raise ExtensionError("factor set must be a 2-cochain on W")
        if not is_normalized(f, W, T):
            raise ExtensionError("factor set must be normalized")
        if not is_cocycle(f, sigma):
            raise ExtensionError("factor set is not a cocycle")
    N, embed, project = twisted_product(T, W, sigma, None if f is None else f.table, name=name)
    section = [w * T.order for w in range(W.order)]
    return Extension(N, T, W, embed, project, sigma, section=section, name=name)


def split_extension(T, W, sigma, name="N") -> Extension:
    return build_extension(T, W, sigma, None, name=name)


def extension_for_class(sigma: GAction, coords, name="N") -> Extension:
    H = h2(sigma.source, sigma.target, sigma)
    return build_extension(sigma.target, sigma.source, sigma, H.representative(coords), name=name)


def extension_class(E: Extension, section=None) -> CohClass:
    H = h2(E.W, E.T, E.sigma)
    return H.class_of(E.factor_set(section))


def _same_data(E1: Extension, E2: Extension) -> None:
    if E1.T != E2.T or E1.W is not E2.W:
        raise ExtensionError("extensions over different T or W")
    if E1.sigma.mats != E2.sigma.mats:
        raise ExtensionError("extensions induce different actions")


def equivalent(E1: Extension, E2: Extension) -> bool:
    _same_data(E1, E2)
    return extension_class(E1).coords == extension_class(E2).coords


def find_equivalence(E1: Extension, E2: Extension, limit: int = 10 ** 5):
    """Explicit search for an isomorphism ``N1 -> N2`` commuting with the
    embeddings and projections.  Returns the map as an index list or ``None``.

    ``N1`` is generated by ``embed1(T)`` and ``alpha1(g)`` for generators ``g``
    of ``W``; an equivalence fixes ``T`` and sends ``alpha1(g)`` to
    ``embed2(theta_g) alpha2(g)``, so only the values ``theta_g`` are searched.
    """
    _same_data(E1, E2)
    T, W = E1.T, E1.W
    wgens = W.generating_set()
    if T.order ** len(wgens) > limit:
        raise ExtensionError("equivalence search exceeds its limit")
    basis = [tuple(int(i == j) for j in range(T.rank)) for i in range(T.rank)]
    gens = [E1.embed_t(b) for b in basis] + [E1.section[w] for w in wgens]
    fixed = [E2.embed_t(b) for b in basis]
    elems = list(T.elements())
    for thetas in itertools.product(elems, repeat=len(wgens)):
        images = fixed + [E2.N.mul[E2.embed_t(t)][E2.section[w]] for t, w in zip(thetas, wgens)]
        phi = _extend_hom(E1.N, E2.N, gens, images)
        if phi is not None and len(set(phi)) == E1.N.order:
            return phi
    return None


def check_section_independence(E: Extension, limit: int = 10 ** 4) -> bool:
    """Every section yields the same class (exhaustive when feasible)."""
    ref = extension_class(E).coords
    count = 1
    for w in range(E.W.order):
        if w != E.W.identity:
            count *= E.T.order
    if count > limit:
        raise ExtensionError("too many sections to enumerate")
    return all(extension_class(E, s).coords == ref for s in E.sections())
