"""Words over group generators.

A word is a tuple of (generator index, exponent) pairs with exponent
+1 or -1; the empty tuple is the identity.  Evaluation is the monoid
homomorphism from concatenation to matrix multiplication.
"""


def word(*letters):
    return tuple(letters)


def word_mul(w1, w2):
    return tuple(w1) + tuple(w2)


def word_inv(w):
    return tuple((i, -e) for i, e in reversed(w))


def word_pow(w, k):
    if k < 0:
        return word_pow(word_inv(w), -k)
    return tuple(w) * k


def free_reduce(w):
    """Cancel adjacent inverse pairs."""
    out = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def evaluate_word(gens, invs, w, identity):
    """Product of generators and inverses named by the word."""
    acc = identity
    for i, e in w:
        if not 0 <= i < len(gens):
            raise IndexError(f"generator index {i} out of range")
        acc = acc.mul(gens[i] if e > 0 else invs[i])
    return acc
