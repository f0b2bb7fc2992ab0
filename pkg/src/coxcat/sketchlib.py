"""Combinatorial encodings of regions.

Reflection sketches (signed permutations), symmetric sketches, symmetric
m-sketches and pointed symmetric sketches; alpha/beta-words, labeled lattice
paths and labeled non-nesting arc diagrams; realization of a sketch as an
exact rational point; boundedness predicates.

A letter is a pair (sub, sup2).  Regular letters have sub in +-[n] and
sup2 = 2s for the shift s, so the letter stands for the value x_sub + s
(with x_{-i} = -x_i).  The four boundary letters of pointed sketches use
sub = 0 and sup2 in {-3, -1, 1, 3} for the constants -3/2, -1/2, 1/2, 3/2.
Doubling the shifts makes "add 1" a uniform +2 step across regular and
boundary letters, which is what the order axioms quantify over.

A word over an alphabet is a sketch when
  (1) it is mirror-symmetric: letter L+1-p is the conjugate of letter p,
  (2) shifting both letters of a pair by +2 preserves their order,
  (3) each chain (fixed sub) appears with ascending sup2,
and every alphabet letter appears exactly once.  These are exactly the
orders realizable by a point, which realize() produces by solving the chain
of strict inequalities with the exact LP kernel.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass, field

from .arrangement import Arrangement
from .exactnum import Rat
from . import regionlab

Letter = namedtuple("Letter", ["sub", "sup2"])


def L(sub: int, sup: int) -> Letter:
    """Regular letter for x_sub + sup."""
    if sub == 0:
        raise ValueError("regular letters need a nonzero subscript")
    return Letter(sub, 2 * sup)


def B(half_sup2: int) -> Letter:
    """Boundary letter for the constant half_sup2/2 (one of -3,-1,1,3)."""
    if half_sup2 not in (-3, -1, 1, 3):
        raise ValueError("boundary letters are -3/2, -1/2, 1/2, 3/2")
    return Letter(0, half_sup2)


POINTED_BETA = B(-1)
BOUNDARY_ALPHA = B(-3)


def conj(letter: Letter) -> Letter:
    return Letter(-letter.sub, -letter.sup2)


def is_alpha(letter: Letter, m: int = 1) -> bool:
    """Openers: x_i + 0, -x_i - m, and the boundary -3/2."""
    if letter.sub > 0:
        return letter.sup2 == 0
    if letter.sub < 0:
        return letter.sup2 == -2 * m
    return letter.sup2 == -3


def letter_value_form(letter: Letter, n: int):
    """The letter's value as an affine form (coeffs over x_1..x_n, const)."""
    coeffs = [0] * n
    if letter.sub > 0:
        coeffs[letter.sub - 1] = 1
    elif letter.sub < 0:
        coeffs[-letter.sub - 1] = -1
    return tuple(coeffs), Rat(letter.sup2, 2)


def letter_token(letter: Letter) -> str:
    if letter.sub == 0:
        return "b(%d/2)" % letter.sup2
    return "a(%d,%d)" % (letter.sub, letter.sup2 // 2)


def alphabet_m(n: int, m: int):
    """All letters of a symmetric m-sketch on n values."""
    out = []
    for i in range(1, n + 1):
        out += [L(i, s) for s in range(0, m + 1)]
        out += [L(-i, s) for s in range(-m, 1)]
    return out


def alphabet_pointed(n: int):
    return alphabet_m(n, 1) + [B(-3), B(-1), B(1), B(3)]


# ---------------------------------------------------------------------------
# sketch classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReflSketch:
    """Region of the type C reflection arrangement: a signed permutation.

    The stored tuple is the second half of the 2n-letter word; the first half
    is the reversed, sign-flipped mirror.
    """

    second_half: tuple

    @property
    def n(self) -> int:
        return len(self.second_half)

    def word(self):
        return tuple(-v for v in reversed(self.second_half)) + self.second_half

    def __str__(self):
        return ",".join("%+d" % v for v in self.second_half)


@dataclass(frozen=True)
class SymmetricSketch:
    letters: tuple
    n: int

    @property
    def m(self) -> int:
        return 1

    def __str__(self):
        return sketch_tokens(self)


@dataclass(frozen=True)
class MSketch:
    letters: tuple
    n: int
    m: int

    def __str__(self):
        return sketch_tokens(self)


@dataclass(frozen=True)
class PointedSketch:
    letters: tuple
    n: int

    @property
    def m(self) -> int:
        return 1

    def __str__(self):
        return sketch_tokens(self)


def sketch_tokens(sk) -> str:
    letters = sk.letters
    half = len(letters) // 2
    toks = [letter_token(x) for x in letters]
    return " ".join(toks[:half]) + " | " + " ".join(toks[half:])


# ---------------------------------------------------------------------------
# validity predicates
# ---------------------------------------------------------------------------


def _word_is_sketch(letters, alphabet) -> bool:
    lset = set(alphabet)
    if len(letters) != len(alphabet) or set(letters) != lset:
        return False
    size = len(letters)
    pos = {x: p for p, x in enumerate(letters)}
    for p in range(size):
        if letters[size - 1 - p] != conj(letters[p]):
            return False
    shifted = [(x, Letter(x.sub, x.sup2 + 2)) for x in alphabet if Letter(x.sub, x.sup2 + 2) in lset]
    for x, x1 in shifted:
        if pos[x] > pos[x1]:
            return False
    for x, x1 in shifted:
        for y, y1 in shifted:
            if pos[x] < pos[y] and pos[x1] > pos[y1]:
                return False
    return True


def is_symmetric_sketch(letters, n: int = None) -> bool:
    letters = tuple(letters)
    if n is None:
        n = max((abs(x.sub) for x in letters), default=0)
    return _word_is_sketch(letters, alphabet_m(n, 1))


def is_m_sketch(letters, n: int = None, m: int = 1) -> bool:
    letters = tuple(letters)
    if n is None:
        n = max((abs(x.sub) for x in letters), default=0)
    return _word_is_sketch(letters, alphabet_m(n, m))


def is_pointed_sketch(letters, n: int = None) -> bool:
    letters = tuple(letters)
    if n is None:
        n = max((abs(x.sub) for x in letters), default=0)
    return _word_is_sketch(letters, alphabet_pointed(n))


def validate(sk) -> bool:
    if isinstance(sk, ReflSketch):
        return sorted(abs(v) for v in sk.second_half) == list(range(1, sk.n + 1))
    if isinstance(sk, SymmetricSketch):
        return is_symmetric_sketch(sk.letters, sk.n)
    if isinstance(sk, MSketch):
        return is_m_sketch(sk.letters, sk.n, sk.m)
    if isinstance(sk, PointedSketch):
        return is_pointed_sketch(sk.letters, sk.n)
    raise TypeError("not a sketch: %r" % (sk,))


# ---------------------------------------------------------------------------
# signed permutations and ballot words
# ---------------------------------------------------------------------------


def signed_perms(n: int):
    """All 2^n n! signed permutations, in a stable order."""
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(s * v for s, v in zip(signs, perm))


def ballot_words(length: int):
    """Words over {a, b} whose prefixes never have more b's than a's."""

    def rec(prefix, height, left):
        if left == 0:
            yield "".join(prefix)
            return
        prefix.append("a")
        yield from rec(prefix, height + 1, left - 1)
        prefix.pop()
        if height > 0:
            prefix.append("b")
            yield from rec(prefix, height - 1, left - 1)
            prefix.pop()

    yield from rec([], 0, length)


# ---------------------------------------------------------------------------
# symmetric sketches <-> (alpha,beta-word, signed permutation)
# ---------------------------------------------------------------------------


def sketch_from_pair(word: str, perm, n: int = None) -> SymmetricSketch:
    """Build the unique symmetric sketch for a ballot word and signed perm.

    The word (length 2n) is extended by its reversed complement, the
    permutation by its reversed negation, and subscripts are read off in
    order along the alpha- and beta-letters of the extended word.
    """
    if n is None:
        n = len(perm)
    if len(word) != 2 * n or len(perm) != n:
        raise ValueError("need a word of length 2n and a signed permutation of n")
    heights = 0
    for ch in word:
        heights += 1 if ch == "a" else -1
        if heights < 0:
            raise ValueError("word is not a ballot word")
    full = word + "".join("a" if ch == "b" else "b" for ch in reversed(word))
    subs = list(perm) + [-v for v in reversed(perm)]
    ai = iter(subs)
    bi = iter(subs)
    letters = []
    for ch in full:
        if ch == "a":
            s = next(ai)
            letters.append(L(s, 0) if s > 0 else L(s, -1))
        else:
            s = next(bi)
            letters.append(L(s, 1) if s > 0 else L(s, 0))
    return SymmetricSketch(letters=tuple(letters), n=n)


def pair_from_sketch(sk: SymmetricSketch):
    """The (alpha,beta-word, signed permutation) pair of a symmetric sketch."""
    half = sk.letters[: 2 * sk.n]
    word = "".join("a" if is_alpha(x) else "b" for x in half)
    perm = tuple(x.sub for x in sk.letters if is_alpha(x))[: sk.n]
    return word, perm


def enumerate_sketches(n: int):
    """All 2^n n! C(2n, n) symmetric sketches."""
    out = []
    perms = list(signed_perms(n))
    for word in ballot_words(2 * n):
        for perm in perms:
            out.append(sketch_from_pair(word, perm, n))
    return out


# ---------------------------------------------------------------------------
# symmetric m-sketches
# ---------------------------------------------------------------------------


def _symmetric_block_patterns(n: int, m: int):
    """Block structures of symmetric m-non-nesting partitions.

    Backtracks over the 2(m+1)n positions choosing start-or-extend.
    Non-nesting forces every extension to continue the open chain whose last
    element is oldest, so the position pattern determines the blocks; the
    second half is forced by the mirror rule (a position starts a block iff
    its mirror ends one).  Yields tuples of block position-tuples (1-based),
    ordered by block start.
    """
    size = m + 1
    total = 2 * (m + 1) * n
    half = total // 2

    blocks = []
    queue = []  # indices into blocks, front = oldest last element
    starts = set()
    ends = set()

    def place(p, start):
        if start:
            if len(blocks) >= 2 * n:
                return None
            blocks.append([p])
            queue.append(len(blocks) - 1)
            starts.add(p)
            return ("s",)
        if not queue:
            return None
        bi = queue.pop(0)
        blocks[bi].append(p)
        if len(blocks[bi]) == size:
            ends.add(p)
        else:
            queue.append(bi)
        return ("e", bi)

    def undo(p, action):
        if action[0] == "s":
            blocks.pop()
            queue.remove(len(blocks))
            starts.discard(p)
        else:
            bi = action[1]
            if len(blocks[bi]) == size:
                ends.discard(p)
            else:
                queue.remove(bi)
            blocks[bi].pop()
            queue.insert(0, bi)

    out = []

    def rec(p):
        if p > total:
            if not queue and len(blocks) == 2 * n:
                out.append(tuple(tuple(b) for b in blocks))
            return
        if p <= half:
            choices = (True, False)
        else:
            # mirror rule: a position starts a block iff its mirror ends one
            choices = ((total + 1 - p) in ends,)
        for start in choices:
            action = place(p, start)
            if action is None:
                continue
            if p > half and (p in ends) != ((total + 1 - p) in starts):
                undo(p, action)
                continue
            rec(p + 1)
            undo(p, action)

    rec(1)
    return out


def enumerate_m_sketches(n: int, m: int):
    """All 2^n n! C((m+1)n, n) symmetric m-sketches."""
    total = 2 * (m + 1) * n
    out = []
    perms = list(signed_perms(n))
    for blocks in _symmetric_block_patterns(n, m):
        end_at = {b[-1]: bi for bi, b in enumerate(blocks)}
        conj_of = {bi: end_at[total + 1 - b[0]] for bi, b in enumerate(blocks)}
        for perm in perms:
            labels = {}
            for k in range(n):
                labels[k] = perm[k]
                labels[conj_of[k]] = -perm[k]
            letters = [None] * total
            for bi, b in enumerate(blocks):
                c = labels[bi]
                for j, p in enumerate(b):
                    letters[p - 1] = Letter(c, 2 * j if c > 0 else 2 * (j - m))
            out.append(MSketch(letters=tuple(letters), n=n, m=m))
    return out


# ---------------------------------------------------------------------------
# pointed sketches
# ---------------------------------------------------------------------------


def pointed_words(n: int):
    """(word, pointer) pairs: ballot words of length 2n+2 with a pointed beta
    preceded by exactly n+1 alpha-letters."""
    for word in ballot_words(2 * n + 2):
        acount = 0
        for p, ch in enumerate(word):
            if ch == "a":
                acount += 1
            elif acount == n + 1:
                yield word, p
    return


def pointed_sketch_from_pair(word: str, pointer: int, perm, n: int = None) -> PointedSketch:
    """Pointed sketch from a pointed word and signed permutation.

    The boundary opener -3/2 is the alpha paired (first-in-first-out along
    the non-nesting arcs) with the pointed beta; the remaining subscripts are
    read off along the extended word exactly as for symmetric sketches.
    """
    if n is None:
        n = len(perm)
    if len(word) != 2 * n + 2 or word[pointer] != "b":
        raise ValueError("need a word of length 2n+2 pointing at a beta")
    if sum(1 for ch in word[:pointer] if ch == "a") != n + 1:
        raise ValueError("pointed beta must follow exactly n+1 alpha-letters")
    # the pointed beta closes the oldest open arc: that alpha is the boundary
    betas_before = pointer - (n + 1)
    boundary_alpha_index = betas_before  # 0-based among the first half alphas
    full = word + "".join("a" if ch == "b" else "b" for ch in reversed(word))
    subs = list(perm) + [-v for v in reversed(perm)]
    letters = []
    ai = iter(subs)
    bi = iter(subs)
    acount = 0
    bcount = 0
    half = 2 * n + 2
    for p, ch in enumerate(full):
        if p >= half:
            letters.append(conj(letters[2 * half - 1 - p]))
            continue
        if ch == "a":
            if acount == boundary_alpha_index:
                letters.append(B(-3))
            else:
                s = next(ai)
                letters.append(L(s, 0) if s > 0 else L(s, -1))
            acount += 1
        else:
            if p == pointer:
                letters.append(B(-1))
            else:
                s = next(bi)
                letters.append(L(s, 1) if s > 0 else L(s, 0))
            bcount += 1
    return PointedSketch(letters=tuple(letters), n=n)


def pointed_pair_from_sketch(sk: PointedSketch):
    """(word, pointer, signed permutation) of a pointed sketch."""
    half = sk.letters[: 2 * sk.n + 2]
    word = "".join("a" if is_alpha(x) else "b" for x in half)
    pointer = next(p for p, x in enumerate(half) if x == POINTED_BETA)
    perm = tuple(x.sub for x in sk.letters if is_alpha(x) and x.sub != 0)[: sk.n]
    return word, pointer, perm


def enumerate_pointed(n: int):
    """All 2^n n! C(2n+2, n) pointed symmetric sketches."""
    out = []
    perms = list(signed_perms(n))
    for word, pointer in pointed_words(n):
        for perm in perms:
            out.append(pointed_sketch_from_pair(word, pointer, perm, n))
    return out


def point_beta_involution(word: str, pointer: int) -> str:
    """Replace the pointed beta with an alpha (pointed words -> ballot words
    of length 2n+2 with at least n+2 alphas)."""
    return word[:pointer] + "a" + word[pointer + 1 :]


def tall_word_to_pointed(word: str, n: int):
    """Inverse: change the (n+2)-th alpha back into the pointed beta."""
    acount = 0
    for p, ch in enumerate(word):
        if ch == "a":
            acount += 1
            if acount == n + 2:
                return word[:p] + "b" + word[p + 1 :], p
    raise ValueError("word has fewer than n+2 alpha-letters")


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------


def sketch_value_forms(sk):
    """Affine value forms of the sketch's word letters, in word order."""
    if isinstance(sk, ReflSketch):
        n = sk.n
        forms = []
        for v in sk.word():
            coeffs = [0] * n
            coeffs[abs(v) - 1] = 1 if v > 0 else -1
            forms.append((tuple(coeffs), Rat(0)))
        return forms
    n = sk.n
    return [letter_value_form(x, n) for x in sk.letters]


def realize(sk, arr: Arrangement):
    """An exact rational point satisfying the sketch's chain of inequalities.

    Solved uniformly by the LP margin kernel; valid sketches always realize,
    so a failure raises.
    """
    forms = sketch_value_forms(sk)
    if arr.n != len(forms[0][0]):
        raise ValueError("sketch dimension does not match the arrangement")
    chain = []
    for (c0, k0), (c1, k1) in zip(forms, forms[1:]):
        chain.append((tuple(a - b for a, b in zip(c1, c0)), k1 - k0))
    eps, x = regionlab.max_margin(chain, arr.n)
    if eps <= 0:
        raise ValueError("sketch not realizable")
    return x


# ---------------------------------------------------------------------------
# lattice paths and arc diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePath:
    steps: tuple          # +1 per alpha (up), -1 per beta (down); first half only
    labels: tuple         # subscripts on the first n up-steps
    pointer: int = None   # index of the pointed down-step, for pointed sketches

    def heights(self):
        out, h = [], 0
        for s in self.steps:
            h += s
            out.append(h)
        return tuple(out)


@dataclass(frozen=True)
class ArcDiagram:
    """Non-nesting arc diagram: chains of equal-subscript letters.

    Blocks are (positions, label) with 1-based positions ascending and the
    boundary chain of a pointed sketch labeled 0.  Blocks are listed by their
    smallest position.
    """

    size: int
    blocks: tuple

    def labels_by_position(self):
        out = {}
        for ps, lab in self.blocks:
            for p in ps:
                out[p] = lab
        return out


def to_lattice_path(sk) -> LatticePath:
    m = sk.m
    half = sk.letters[: len(sk.letters) // 2]
    steps = tuple(1 if is_alpha(x, m) else -1 for x in half)
    labels = tuple(x.sub for x in sk.letters if is_alpha(x, m) and x.sub != 0)[: sk.n]
    pointer = None
    if isinstance(sk, PointedSketch):
        pointer = next(p for p, x in enumerate(half) if x == POINTED_BETA)
    return LatticePath(steps=steps, labels=labels, pointer=pointer)


def to_arc_diagram(sk) -> ArcDiagram:
    chains = {}
    for p, x in enumerate(sk.letters, start=1):
        chains.setdefault(x.sub, []).append(p)
    blocks = sorted(
        ((tuple(ps), sub) for sub, ps in chains.items()),
        key=lambda blk: blk[0][0],
    )
    return ArcDiagram(size=len(sk.letters), blocks=tuple(blocks))


def cut_gaps(diagram: ArcDiagram):
    """Gaps g (between positions g and g+1) crossed by no block."""
    covered = [False] * (diagram.size + 1)
    for ps, _ in diagram.blocks:
        for g in range(ps[0], ps[-1]):
            covered[g] = True
    return [g for g in range(1, diagram.size) if not covered[g]]


def interlinked_pieces(diagram: ArcDiagram):
    """Maximal runs of blocks not separable by a vertical line."""
    cuts = cut_gaps(diagram) + [diagram.size]
    pieces, start = [], 1
    for c in cuts:
        piece = tuple(blk for blk in diagram.blocks if start <= blk[0][0] and blk[0][-1] <= c)
        if piece:
            pieces.append(piece)
        start = c + 1
    return pieces


def decompose_nnp(diagram: ArcDiagram):
    """Split a symmetric diagram into its bounded and unbounded parts.

    The bounded part is the interlinked piece containing the center (empty if
    the center is a cut); the unbounded part is the right-hand copy of the
    remaining pieces.  Placing a mirror copy of the unbounded part on either
    side of the bounded part reassembles the diagram.
    """
    center = diagram.size // 2
    pieces = interlinked_pieces(diagram)
    bounded_piece = ()
    right = []
    for piece in pieces:
        lo = min(blk[0][0] for blk in piece)
        hi = max(blk[0][-1] for blk in piece)
        if lo <= center < hi:
            bounded_piece = piece
        elif lo > center:
            right.append(piece)
    bounded = ArcDiagram(size=diagram.size, blocks=tuple(bounded_piece))
    unbounded = ArcDiagram(
        size=diagram.size,
        blocks=tuple(blk for piece in right for blk in piece),
    )
    return bounded, unbounded


def is_interlinked(diagram: ArcDiagram) -> bool:
    return not cut_gaps(diagram)


def is_bounded_sketch(sk, family: str) -> bool:
    """Boundedness of the region a sketch realizes to, read off its path.

    cat-c / cat-c-ext / cat-d: the path touches the axis only at the origin.
    pointed / cat-b / cat-bc: the path stays above the axis after the origin
    except possibly at its right endpoint.
    """
    if family in ("cat-c", "cat-d"):
        return all(h > 0 for h in to_lattice_path(sk).heights())
    if family == "cat-c-ext":
        # for m > 1 the up/down path no longer tracks open chains, so use
        # the diagram directly: bounded regions are the interlinked ones
        return is_interlinked(to_arc_diagram(sk))
    if family in ("pointed", "cat-b", "cat-bc"):
        hs = to_lattice_path(sk).heights()
        return all(h > 0 for h in hs[:-1]) and hs[-1] >= 0
    raise ValueError("no boundedness rule for family %r" % family)


# ---------------------------------------------------------------------------
# text codecs
# ---------------------------------------------------------------------------


def parse_letter(tok: str) -> Letter:
    tok = tok.strip()
    if tok.startswith("b(") and tok.endswith("/2)"):
        return B(int(tok[2:-3]))
    if tok.startswith("a(") and tok.endswith(")"):
        sub_s, sup_s = tok[2:-1].split(",")
        return L(int(sub_s), int(sup_s))
    raise ValueError("bad letter token %r" % tok)


def parse_sketch(text: str):
    """Parse a sketch from token or compact form.

    Token form: 'a(3,0) a(-1,-1) | ...' with an optional half separator.
    Compact form: '<word>;<perm csv>' with word letters a/b and an uppercase
    B for the pointed beta.  A bare CSV of signed integers is a reflection
    sketch (its second half).
    """
    text = text.strip()
    if ";" in text:
        word, permcsv = text.split(";")
        perm = tuple(int(v) for v in permcsv.split(","))
        n = len(perm)
        if "B" in word:
            pointer = word.index("B")
            return pointed_sketch_from_pair(word.replace("B", "b"), pointer, perm, n)
        return sketch_from_pair(word, perm, n)
    if "(" in text:
        toks = [t for t in text.replace("|", " ").split() if t]
        letters = tuple(parse_letter(t) for t in toks)
        n = max(abs(x.sub) for x in letters)
        if any(x.sub == 0 for x in letters):
            return PointedSketch(letters=letters, n=n)
        m = max(x.sup2 for x in letters) // 2
        if m == 1:
            return SymmetricSketch(letters=letters, n=n)
        return MSketch(letters=letters, n=n, m=m)
    return ReflSketch(second_half=tuple(int(v) for v in text.split(",")))


def compact_form(sk) -> str:
    if isinstance(sk, ReflSketch):
        return str(sk)
    if isinstance(sk, PointedSketch):
        word, pointer, perm = pointed_pair_from_sketch(sk)
        word = word[:pointer] + "B" + word[pointer + 1 :]
        return "%s;%s" % (word, ",".join(str(v) for v in perm))
    word, perm = (
        pair_from_sketch(sk)
        if isinstance(sk, SymmetricSketch)
        else m_pair_from_sketch(sk)
    )
    return "%s;%s" % (word, ",".join(str(v) for v in perm))


def m_pair_from_sketch(sk: MSketch):
    half = sk.letters[: len(sk.letters) // 2]
    word = "".join("a" if is_alpha(x, sk.m) else "b" for x in half)
    perm = tuple(x.sub for x in sk.letters if is_alpha(x, sk.m))[: sk.n]
    return word, perm
