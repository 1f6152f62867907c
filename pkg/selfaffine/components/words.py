"""
Words, Permutations and Matrix Tuples

Words are tuples of symbols 1..N. Products A_w = A_{w1} ... A_{wn} are
accumulated left to right; level computations walk the product tree one
symbol at a time so every prefix product is computed once.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg, settings
from .errors import NonFinite, Overflow, ValidationError

logger = logging.getLogger(__name__)


def validate_word(word, N):
    try:
        word = tuple(int(symbol) for symbol in word)
    except (TypeError, ValueError):
        raise ValidationError(f"word {word!r} is not a sequence of integer symbols") from None
    if len(word) == 0:
        raise ValidationError("words must have length >= 1")
    for symbol in word:
        if not 1 <= symbol <= N:
            raise ValidationError(f"symbol {symbol} outside alphabet 1..{N}")
    return word


def word_to_str(word, N=None):
    """Digit string for N <= 9, dot-separated symbols otherwise."""
    if N is not None and N >= 10:
        return ".".join(str(symbol) for symbol in word)
    return "".join(str(symbol) for symbol in word)


def word_from_str(text):
    text = text.strip()
    parts = text.split(".") if "." in text else list(text)
    if not parts or not all(part.isdigit() for part in parts):
        raise ValidationError(f"word {text!r} must be digits, or symbols separated by '.'")
    return tuple(int(part) for part in parts)


def concatenate(*words):
    return tuple(itertools.chain.from_iterable(words))


def power(word, k):
    return tuple(word) * k


def check_budget(N, n, budget=None):
    """Raise Overflow when N^n exceeds the enumeration budget."""
    limit = settings.word_budget(budget)
    count = N**n
    if count > limit:
        raise Overflow(f"{N}^{n} = {count} words exceeds the budget of {limit}")
    return count


def enumerate_words(N, n, budget=None):
    """Yield all N^n words of length n in lexicographic order."""
    if N < 2:
        raise ValidationError(f"alphabet size must be >= 2, got {N}")
    if n < 1:
        raise ValidationError(f"word length must be >= 1, got {n}")
    check_budget(N, n, budget)
    for word in itertools.product(range(1, N + 1), repeat=n):
        yield word


def word_index(word, N):
    """Position of a word in the lexicographic order of its level."""
    index = 0
    for symbol in word:
        index = index * N + (symbol - 1)
    return index


def word_at(index, N, n):
    """Inverse of ``word_index`` on level n."""
    symbols = []
    for _ in range(n):
        index, digit = divmod(int(index), N)
        symbols.append(digit + 1)
    return tuple(reversed(symbols))


def prefix_partition(N, n):
    """
    Prefixes splitting level n into independent subtrees.

    The prefix length depends on (N, n) only, so every worker count sees the
    same subtrees and the same per-word arithmetic.
    """
    length = 0
    while length < n - 1 and N ** (length + 1) <= settings.PARTITION_TARGET:
        length += 1
    return list(itertools.product(range(1, N + 1), repeat=length))


@dataclass(frozen=True)
class SymbolPermutation:
    """A bijection of {1..N}; images[k-1] is the image of symbol k."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        N = len(images)
        if sorted(images) != list(range(1, N + 1)):
            raise ValidationError(f"{images} is not a permutation of 1..{N}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, N):
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def swap(cls, N=2, a=1, b=2):
        images = list(range(1, N + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def size(self):
        return len(self.images)

    @cached_property
    def order(self):
        """Least m >= 1 with iota^m = id (lcm of the cycle lengths)."""
        seen = set()
        order = 1
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            length = 0
            current = start
            while current not in seen:
                seen.add(current)
                current = self.images[current - 1]
                length += 1
            order = math.lcm(order, length)
        return order

    @property
    def is_identity(self):
        return self.images == tuple(range(1, self.size + 1))

    @property
    def is_involution(self):
        return self.order <= 2

    def inverse(self):
        inv = [0] * self.size
        for k, image in enumerate(self.images, start=1):
            inv[image - 1] = k
        return SymbolPermutation(tuple(inv))

    def __call__(self, symbol):
        return self.images[symbol - 1]


def apply_permutation(iota, word):
    """Symbol-wise image iota[(i_k)] = (iota(i_k))."""
    return tuple(iota(symbol) for symbol in word)


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """N invertible d x d matrices, stored as an (N, d, d) array."""

    matrices: np.ndarray

    def __post_init__(self):
        stack = linalg.as_stack(self.matrices, "matrix tuple")
        if stack.ndim != 3:
            raise ValueError(f"matrix tuple must have shape (N, d, d), got {stack.shape}")
        if stack.shape[0] < 1:
            raise ValidationError("matrix tuple is empty")
        for matrix in stack:
            linalg.check_invertible(matrix)
        stack = stack.copy()
        stack.setflags(write=False)
        object.__setattr__(self, "matrices", stack)

    @classmethod
    def from_list(cls, matrices):
        return cls(np.array([np.asarray(m, dtype=float) for m in matrices]))

    @property
    def N(self):
        return self.matrices.shape[0]

    @property
    def d(self):
        return self.matrices.shape[1]

    def __getitem__(self, symbol):
        return self.matrices[symbol - 1]

    def __len__(self):
        return self.N

    def norms(self):
        return np.array([linalg.norm(m) for m in self.matrices])

    def permuted(self, iota):
        """The tuple (A_iota(1), ..., A_iota(N)); its word products are A_iota(w)."""
        if iota.size != self.N:
            raise ValidationError(f"permutation on {iota.size} symbols for a tuple of {self.N}")
        order = [iota(k) - 1 for k in range(1, self.N + 1)]
        return MatrixTuple(self.matrices[order])

    def exterior_power(self, k):
        return MatrixTuple(linalg.exterior_power(self.matrices, k))

    def transformed(self, fn):
        return MatrixTuple(np.array([fn(m) for m in self.matrices]))


def kronecker_tuple(base, iota):
    """A_i = B_i (x) B_iota(i)."""
    partner = base.permuted(iota)
    return MatrixTuple(np.array([np.kron(b, c) for b, c in zip(base.matrices, partner.matrices)]))


def _guard(stack):
    norms = np.linalg.norm(stack, axis=(-2, -1))
    if not np.all(np.isfinite(norms)):
        raise NonFinite("word product has non-finite entries")
    if np.any(norms < settings.PRODUCT_NORM_FLOOR) or np.any(norms > settings.PRODUCT_NORM_CEILING):
        raise NonFinite(
            f"word product norm left [{settings.PRODUCT_NORM_FLOOR:g}, "
            f"{settings.PRODUCT_NORM_CEILING:g}]"
        )


def word_matrix(T, word):
    """Left-to-right product A_{i1} ... A_{in}."""
    word = validate_word(word, T.N)
    product = T[word[0]].copy()
    for symbol in word[1:]:
        product = product @ T[symbol]
        _guard(product)
    return product


def extend(products, T):
    """Append every symbol on the right: (m, d, d) -> (m * N, d, d), lexicographic."""
    d = T.d
    stack = np.matmul(products[:, None, :, :], T.matrices[None, :, :, :]).reshape(-1, d, d)
    _guard(stack)
    return stack


def level_products(T, n, prefix=()):
    """
    Products A_w for every word w of length n starting with ``prefix``, in
    lexicographic order, carried from the prefix one symbol at a time.
    """
    if n < len(prefix):
        raise ValidationError(f"prefix longer than level {n}")
    products = np.eye(T.d)[None, :, :]
    for symbol in prefix:
        products = np.matmul(products, T.matrices[symbol - 1][None, :, :])
        _guard(products)
    for _ in range(n - len(prefix)):
        products = extend(products, T)
    return products
