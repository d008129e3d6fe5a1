"""Root-lattice combinatorics for symmetrizable generalized Cartan matrices.

Covers the bilinear form (alpha_i, alpha_j) = eps_i * a_ij, Weyl group
actions and reduced words, parabolic data for finite-type subsets X
(positive roots, longest element, half sums of roots and coroots), the
lattice involution coming from a diagram involution, and validation and
enumeration of admissible pairs (X, tau).

Root vectors are plain tuples of integers (or Fractions where half sums
appear), indexed by position in the datum's label list.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

_ROOT_CLOSURE_CAP = 2500
_ENUMERATION_RANK_CAP = 10


class FiniteTypeError(ValueError):
    """Raised when a parabolic subset is not of finite type."""


class AdmissibleError(ValueError):
    """Raised by validate_admissible; carries the list of violated conditions."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def _symmetrizer(A):
    """Minimal positive symmetrizer eps with eps_i a_ij = eps_j a_ji."""
    n = len(A)
    eps = [None] * n
    for start in range(n):
        if eps[start] is not None:
            continue
        eps[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if A[i][j] and j != i:
                    want = eps[i] * A[i][j] / A[j][i]
                    if eps[j] is None:
                        eps[j] = want
                        stack.append(j)
                    elif eps[j] != want:
                        raise ValueError("Cartan matrix is not symmetrizable")
    lcm = 1
    for e in eps:
        lcm = lcm * e.denominator // _gcd(lcm, e.denominator)
    out = [int(e * lcm) for e in eps]
    g = 0
    for e in out:
        g = _gcd(g, e)
    return tuple(e // g for e in out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class CartanDatum:
    """A generalized Cartan matrix with symmetrizers and ordered node labels."""

    def __init__(self, A, eps=None, labels=None):
        A = tuple(tuple(int(x) for x in row) for row in A)
        n = len(A)
        if labels is None:
            labels = tuple(range(1, n + 1))
        labels = tuple(int(x) for x in labels)
        if len(set(labels)) != n:
            raise ValueError("node labels must be distinct")
        for i in range(n):
            if len(A[i]) != n or A[i][i] != 2:
                raise ValueError("Cartan matrix must be square with 2 on the diagonal")
            for j in range(n):
                if i != j and A[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    raise ValueError("Cartan zero pattern must be symmetric")
        if eps is None:
            eps = _symmetrizer(A)
        else:
            eps = tuple(int(x) for x in eps)
            if len(eps) != n or any(e <= 0 for e in eps):
                raise ValueError("symmetrizers must be positive")
            g = 0
            for e in eps:
                g = _gcd(g, e)
            if g != 1:
                raise ValueError("symmetrizers must be coprime")
            for i in range(n):
                for j in range(n):
                    if eps[i] * A[i][j] != eps[j] * A[j][i]:
                        raise ValueError("D*A is not symmetric")
        self.A = A
        self.eps = eps
        self.labels = labels
        self._pos = {lab: p for p, lab in enumerate(labels)}
        # symmetric Gram matrix (alpha_i, alpha_j) by position
        self.gram = tuple(
            tuple(eps[i] * A[i][j] for j in range(n)) for i in range(n)
        )

    @property
    def n(self):
        return len(self.labels)

    def pos(self, label):
        try:
            return self._pos[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def a(self, i, j):
        return self.A[self.pos(i)][self.pos(j)]

    def epsilon(self, i):
        return self.eps[self.pos(i)]

    def simple_root(self, i):
        p = self.pos(i)
        return tuple(1 if t == p else 0 for t in range(self.n))

    def zero_vector(self):
        return (0,) * self.n

    # -- bilinear form and reflections --------------------------------------

    def bilinear(self, beta, gamma):
        """(beta, gamma) extended bilinearly from (alpha_i, alpha_j)."""
        total = 0
        for p, b in enumerate(beta):
            if b:
                row = self.gram[p]
                total += b * sum(c * row[q] for q, c in enumerate(gamma) if c)
        return total

    def root_norm(self, beta):
        return self.bilinear(beta, beta)

    def coroot_pairing(self, gamma, beta):
        """gamma(beta^vee) = 2(gamma, beta)/(beta, beta) as an exact value."""
        num = 2 * self.bilinear(gamma, beta)
        den = self.root_norm(beta)
        f = Fraction(num, den)
        return int(f) if f.denominator == 1 else f

    def reflect(self, i, beta):
        """Simple reflection s_i(beta) = beta - beta(h_i) alpha_i."""
        p = self.pos(i)
        coeff = sum(c * self.A[p][q] for q, c in enumerate(beta) if c)
        if not coeff:
            return tuple(beta)
        out = list(beta)
        out[p] -= coeff
        return tuple(out)

    def weyl_action(self, word, beta):
        """Apply w = s_{word[0]} ... s_{word[-1]}; rightmost factor acts first."""
        for i in reversed(word):
            beta = self.reflect(i, beta)
        return beta

    def is_reduced(self, word):
        """Root-descent criterion: reduced iff every suffix image
        s_{i_k}...s_{i_{l+1}}(alpha_{i_l}) is a positive root."""
        word = tuple(word)
        k = len(word)
        for l in range(k):
            beta = self.simple_root(word[l])
            for t in range(l + 1, k):
                beta = self.reflect(word[t], beta)
            if not _is_positive(beta):
                return False
        return True

    def coxeter_m(self, i, j):
        """Coxeter exponent m_ij; 0 stands for infinity."""
        prod = self.a(i, j) * self.a(j, i)
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod, 0)


def _is_positive(beta):
    return any(beta) and all(c >= 0 for c in beta)


def vec_add(beta, gamma):
    return tuple(b + c for b, c in zip(beta, gamma))


def vec_sub(beta, gamma):
    return tuple(b - c for b, c in zip(beta, gamma))


def vec_neg(beta):
    return tuple(-b for b in beta)


# ---------------------------------------------------------------------------
# Named constructors.
# ---------------------------------------------------------------------------

def _chain(n, arrows=()):
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    for (i, j, v) in arrows:
        A[i][j] = v
    return A


def cartan_datum(kind: str, rank: int = 0) -> CartanDatum:
    """Build a named datum: finite types A-G or untwisted affine 'affine:A'."""
    kind = kind.strip()
    if kind.startswith("affine:"):
        fam = kind.split(":", 1)[1]
        if fam not in ("A", "A1"):
            raise ValueError(f"unsupported affine family {fam!r}")
        if fam == "A1":
            rank = 1
        if rank == 1:
            return CartanDatum([[2, -2], [-2, 2]], labels=(0, 1))
        if rank < 2:
            raise ValueError("affine:A needs rank >= 1")
        n = rank + 1
        A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            A[i][(i + 1) % n] = A[(i + 1) % n][i] = -1
        return CartanDatum(A, labels=tuple(range(n)))
    if kind == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        return CartanDatum(_chain(rank))
    if kind == "B":
        if rank < 2:
            raise ValueError("type B needs rank >= 2")
        A = _chain(rank, [(rank - 1, rank - 2, -2)])
        return CartanDatum(A)
    if kind == "C":
        if rank < 2:
            raise ValueError("type C needs rank >= 2")
        A = _chain(rank, [(rank - 2, rank - 1, -2)])
        return CartanDatum(A)
    if kind == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        for i in range(rank - 3):
            A[i][i + 1] = A[i + 1][i] = -1
        c = rank - 3
        for leaf in (rank - 2, rank - 1):
            A[c][leaf] = A[leaf][c] = -1
        return CartanDatum(A)
    if kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, rank - 1)]
        for i, j in edges:
            A[i][j] = A[j][i] = -1
        return CartanDatum(A)
    if kind == "F":
        if rank != 4:
            raise ValueError("type F needs rank 4")
        A = _chain(4, [(2, 1, -2)])
        return CartanDatum(A)
    if kind == "G":
        if rank != 2:
            raise ValueError("type G needs rank 2")
        return CartanDatum([[2, -1], [-3, 2]])
    raise ValueError(f"unknown Cartan type {kind!r}")


def datum_from_json(obj) -> CartanDatum:
    """JSON schema: {'nodes': n, 'A': [[..]], 'eps': [..]} or {'type':, 'rank':}."""
    if "type" in obj:
        return cartan_datum(obj["type"], int(obj.get("rank", 0)))
    A = obj["A"]
    n = int(obj.get("nodes", len(A)))
    if len(A) != n:
        raise ValueError("'nodes' disagrees with matrix size")
    eps = obj.get("eps")
    labels = obj.get("labels")
    return CartanDatum(A, eps=eps, labels=labels)


def datum_to_json(datum: CartanDatum):
    return {
        "nodes": datum.n,
        "labels": list(datum.labels),
        "A": [list(r) for r in datum.A],
        "eps": list(datum.eps),
    }


# ---------------------------------------------------------------------------
# Parabolic data.
# ---------------------------------------------------------------------------

def parabolic_roots(datum: CartanDatum, X):
    """All roots of the sub root system on X via reflection closure.

    Raises FiniteTypeError when the closure exceeds the growth cap, which
    happens exactly when the parabolic is of infinite type.
    """
    X = sorted(X)
    roots = {datum.simple_root(j) for j in X}
    frontier = list(roots)
    while frontier:
        new = []
        for beta in frontier:
            for j in X:
                img = datum.reflect(j, beta)
                if img not in roots:
                    roots.add(img)
                    new.append(img)
        if len(roots) > _ROOT_CLOSURE_CAP:
            raise FiniteTypeError("parabolic not finite type")
        frontier = new
    return sorted(roots)


def is_finite_type(datum: CartanDatum, X) -> bool:
    try:
        parabolic_roots(datum, X)
        return True
    except FiniteTypeError:
        return False


def positive_parabolic_roots(datum: CartanDatum, X):
    return [b for b in parabolic_roots(datum, X) if _is_positive(b)]


def longest_word(datum: CartanDatum, X):
    """A reduced word for the longest element w_X, as a left-to-right product.

    Produced by reflecting the strictly X-dominant vector 2*rho_X to the
    antidominant chamber; the word length equals |Phi_X^+| by construction.
    """
    X = sorted(X)
    plus = positive_parabolic_roots(datum, X)
    v = datum.zero_vector()
    for b in plus:
        v = vec_add(v, b)
    applied = []
    while True:
        for j in X:
            if datum.bilinear(v, datum.simple_root(j)) > 0:
                v = datum.reflect(j, v)
                applied.append(j)
                break
        else:
            break
    word = tuple(reversed(applied))
    if len(word) != len(plus):
        raise RuntimeError("internal: longest-element descent produced a non-reduced word")
    return word


def parabolic_rho(datum: CartanDatum, X):
    """(rho_X as Fraction tuple, 2*rho_X as int tuple, Phi_X^+)."""
    plus = positive_parabolic_roots(datum, X)
    two_rho = datum.zero_vector()
    for b in plus:
        two_rho = vec_add(two_rho, b)
    rho = tuple(Fraction(c, 2) for c in two_rho)
    return rho, two_rho, tuple(plus)


def rho_check_pairing(datum: CartanDatum, X, gamma):
    """gamma(rho_X^vee) = (1/2) sum over Phi_X^+ of gamma(beta^vee), exact."""
    total = Fraction(0)
    for beta in positive_parabolic_roots(datum, X):
        total += Fraction(2 * datum.bilinear(gamma, beta), datum.root_norm(beta))
    total = total / 2
    return int(total) if total.denominator == 1 else total


# ---------------------------------------------------------------------------
# Admissible pairs.
# ---------------------------------------------------------------------------

class AdmissiblePair:
    """A validated pair (X, tau) with derived parabolic and involution data."""

    def __init__(self, datum, X, tau, wX_word, phiX_plus, two_rho_X):
        self.datum = datum
        self.X = frozenset(X)
        self.tau = dict(tau)
        self.wX_word = tuple(wX_word)
        self.phiX_plus = tuple(phiX_plus)
        self.two_rho_X = tuple(two_rho_X)
        self._theta_cols = tuple(
            self.theta(datum.simple_root(lab)) for lab in datum.labels
        )
        self.I_ns = tuple(
            i for i in datum.labels
            if i not in self.X and self.tau[i] == i
            and all(datum.a(i, j) == 0 for j in sorted(self.X))
        )

    def theta(self, beta):
        """Theta(beta) = -w_X(tau(beta)) on the root lattice."""
        datum = self.datum
        tau_beta = [0] * datum.n
        for p, c in enumerate(beta):
            if c:
                tau_beta[datum.pos(self.tau[datum.labels[p]])] += c
        return vec_neg(datum.weyl_action(self.wX_word, tuple(tau_beta)))

    def theta_alpha(self, i):
        return self._theta_cols[self.datum.pos(i)]

    def in_Q_theta(self, beta) -> bool:
        return self.theta(beta) == tuple(beta)

    def theta_fixed_vectors(self):
        """A spanning set of Theta-fixed integer lattice vectors (for tests)."""
        n = self.datum.n
        # rational kernel of (Theta - id), cleared to primitive integer vectors
        rows = []
        for p in range(n):
            col = self._theta_cols[p]
            rows.append([Fraction(col[q] - (1 if q == p else 0)) for q in range(n)])
        # transpose: Theta acts columnwise on coordinates
        M = [[rows[q][p] for q in range(n)] for p in range(n)]
        pivots = []
        r = 0
        for c in range(n):
            pr = next((k for k in range(r, n) if M[k][c]), None)
            if pr is None:
                continue
            M[r], M[pr] = M[pr], M[r]
            pv = M[r][c]
            M[r] = [x / pv for x in M[r]]
            for k in range(n):
                if k != r and M[k][c]:
                    f = M[k][c]
                    M[k] = [a - f * b for a, b in zip(M[k], M[r])]
            pivots.append(c)
            r += 1
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for c in free:
            vec = [Fraction(0)] * n
            vec[c] = Fraction(1)
            for row, pc in zip(M[:r], pivots):
                vec[pc] = -row[c]
            lcm = 1
            for x in vec:
                lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
            ivec = tuple(int(x * lcm) for x in vec)
            g = 0
            for x in ivec:
                g = _gcd(g, x)
            if g:
                basis.append(tuple(x // g for x in ivec))
        return tuple(basis)

    def pairing_theta_2rho(self, i):
        """(alpha_i, Theta(alpha_i) - 2 rho_X) as an integer."""
        d = self.datum
        a = d.simple_root(i)
        return d.bilinear(a, vec_sub(self.theta_alpha(i), self.two_rho_X))

    def __repr__(self):
        X = sorted(self.X)
        moved = {i: j for i, j in sorted(self.tau.items()) if i != j}
        return f"AdmissiblePair(X={X}, tau={moved or 'id'})"


def admissible_violations(datum: CartanDatum, X, tau):
    """List of violated admissibility conditions; empty when (X, tau) is valid."""
    out = []
    X = set(X)
    labels = set(datum.labels)
    if not X <= labels:
        return [f"X contains unknown labels {sorted(X - labels)}"]
    tau = dict(tau)
    if set(tau) != labels or set(tau.values()) != labels:
        return ["tau is not a permutation of the node labels"]
    if any(tau[tau[i]] != i for i in labels):
        out.append("tau is not involutive")
    if any(datum.a(i, j) != datum.a(tau[i], tau[j]) for i in labels for j in labels):
        out.append("tau does not preserve the Cartan matrix")
    if {tau[i] for i in X} != X:
        out.append("tau does not stabilize X")
    if out:
        return out
    try:
        wX = longest_word(datum, X)
    except FiniteTypeError:
        return ["X is not of finite type"]
    for j in sorted(X):
        if datum.weyl_action(wX, datum.simple_root(j)) != vec_neg(datum.simple_root(tau[j])):
            out.append(f"tau and -w_X disagree on node {j}")
    for j in sorted(labels - X):
        if tau[j] == j:
            val = rho_check_pairing(datum, X, datum.simple_root(j))
            if isinstance(val, Fraction):
                out.append(
                    f"alpha_{j}(rho_X^vee) = {val} is not an integer"
                )
    return out


def validate_admissible(datum: CartanDatum, X, tau) -> AdmissiblePair:
    """Return the validated pair or raise AdmissibleError with all violations."""
    violations = admissible_violations(datum, X, tau)
    if violations:
        raise AdmissibleError(violations)
    wX = longest_word(datum, X)
    _, two_rho, plus = parabolic_rho(datum, X)
    return AdmissiblePair(datum, X, tau, wX, plus, two_rho)


def _involutions(labels):
    """All involutive permutations of labels, in deterministic order."""
    labels = sorted(labels)

    def rec(remaining):
        if not remaining:
            yield {}
            return
        first = remaining[0]
        rest = remaining[1:]
        for sub in rec(rest):
            out = dict(sub)
            out[first] = first
            yield out
        for k, partner in enumerate(rest):
            for sub in rec(rest[:k] + rest[k + 1:]):
                out = dict(sub)
                out[first] = partner
                out[partner] = first
                yield out

    return list(rec(labels))


def enumerate_admissible(datum: CartanDatum):
    """All admissible pairs, ordered lexicographically in (X, tau)."""
    if datum.n > _ENUMERATION_RANK_CAP:
        raise ValueError(
            f"admissible-pair enumeration is capped at rank {_ENUMERATION_RANK_CAP}"
        )
    labels = sorted(datum.labels)
    taus = [
        t for t in _involutions(labels)
        if all(datum.a(i, j) == datum.a(t[i], t[j]) for i in labels for j in labels)
    ]
    subsets = []
    for size in range(datum.n + 1):
        subsets.extend(sorted(combinations(labels, size)))
    subsets.sort()
    out = []
    for X in subsets:
        if not is_finite_type(datum, X):
            continue
        for tau in taus:
            if {tau[i] for i in X} != set(X):
                continue
            if not admissible_violations(datum, X, tau):
                out.append(validate_admissible(datum, X, tau))
    out.sort(key=lambda p: (sorted(p.X), tuple(p.tau[i] for i in labels)))
    return out


def pair_from_json(datum: CartanDatum, obj) -> AdmissiblePair:
    """JSON schema: {'X': [...], 'tau': [[i, tau(i)], ...]} (fixed points optional)."""
    X = [int(x) for x in obj.get("X", [])]
    tau = {lab: lab for lab in datum.labels}
    for i, j in obj.get("tau", []):
        tau[int(i)] = int(j)
        tau[int(j)] = int(i)
    return validate_admissible(datum, X, tau)


def pair_to_json(pair: AdmissiblePair):
    return {
        "X": sorted(pair.X),
        "tau": sorted([i, j] for i, j in pair.tau.items() if i < j),
    }


# Free-function forms of the datum/pair operations.

def bilinear_form(datum: CartanDatum, beta, gamma):
    return datum.bilinear(beta, gamma)


def weyl_action(datum: CartanDatum, word, beta):
    return datum.weyl_action(word, beta)


def theta_map(pair: AdmissiblePair, beta):
    return pair.theta(beta)
