"""Porter stemmer (1980), following the author's reference implementation.

Matches the widely distributed reference version rather than the bare paper
text: words of length <= 2 are left unchanged, and step 2 uses the amended
bli->ble and logi->log rules. This is the variant classic search libraries
embed, so stems line up with indexes built by those libraries.
"""

from functools import lru_cache

_VOWELS = "aeiou"


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        # y after a consonant acts as a vowel (syzygy), else as a consonant (toy)
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences: [C](VC)^m[V]."""
    m = 0
    i = 0
    n = len(stem)
    while i < n and _is_consonant(stem, i):
        i += 1
    while i < n:
        while i < n and not _is_consonant(stem, i):
            i += 1
        if i >= n:
            break
        while i < n and _is_consonant(stem, i):
            i += 1
        m += 1
    return m


def _contains_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    """consonant-vowel-consonant ending where the final consonant is not w, x or y."""
    if len(word) < 3:
        return False
    return (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        # longest match wins: if the m>0 condition fails, no other 1b rule fires
        if _measure(w[:-3]) > 0:
            return w[:-1]
        return w
    if w.endswith("ed"):
        if not _contains_vowel(w[:-2]):
            return w
        w = w[:-2]
    elif w.endswith("ing"):
        if not _contains_vowel(w[:-3]):
            return w
        w = w[:-3]
    else:
        return w
    # cleanup after removing -ed / -ing
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if _ends_double_consonant(w) and w[-1] not in "lsz":
        return w[:-1]
    if _measure(w) == 1 and _ends_cvc(w):
        return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _contains_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


# (suffix, replacement) pairs; within a step only the longest matching
# suffix is considered, and if its condition fails nothing else fires.
_STEP2_RULES = (
    ("ational", "ate"),
    ("ization", "ize"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("entli", "ent"),
    ("ousli", "ous"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("alli", "al"),
    ("ator", "ate"),
    ("logi", "log"),
    ("bli", "ble"),
    ("eli", "e"),
)

_STEP3_RULES = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
)

_STEP2_SUFFIXES = tuple(s for s, _ in _STEP2_RULES)
_STEP2_MAP = dict(_STEP2_RULES)
_STEP3_SUFFIXES = tuple(s for s, _ in _STEP3_RULES)
_STEP3_MAP = dict(_STEP3_RULES)

_STEP4_SUFFIXES = (
    "ement",
    "ance",
    "ence",
    "able",
    "ible",
    "ment",
    "ant",
    "ent",
    "ion",
    "ism",
    "ate",
    "iti",
    "ous",
    "ive",
    "ize",
    "al",
    "er",
    "ic",
    "ou",
)


def _longest_match(w: str, suffixes) -> str | None:
    best = None
    for s in suffixes:
        if w.endswith(s) and (best is None or len(s) > len(best)):
            best = s
    return best


def _step2(w: str) -> str:
    match = _longest_match(w, _STEP2_SUFFIXES)
    if match is None:
        return w
    base = w[: -len(match)]
    if _measure(base) > 0:
        return base + _STEP2_MAP[match]
    return w


def _step3(w: str) -> str:
    match = _longest_match(w, _STEP3_SUFFIXES)
    if match is None:
        return w
    base = w[: -len(match)]
    if _measure(base) > 0:
        return base + _STEP3_MAP[match]
    return w


def _step4(w: str) -> str:
    match = _longest_match(w, _STEP4_SUFFIXES)
    if match is None:
        return w
    base = w[: -len(match)]
    if _measure(base) > 1:
        if match == "ion" and not base.endswith(("s", "t")):
            return w
        return base
    return w


def _step5a(w: str) -> str:
    if not w.endswith("e"):
        return w
    base = w[:-1]
    m = _measure(base)
    if m > 1:
        return base
    if m == 1 and not _ends_cvc(base):
        return base
    return w


def _step5b(w: str) -> str:
    if w.endswith("l") and _ends_double_consonant(w) and _measure(w) > 1:
        return w[:-1]
    return w


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Stem a lowercase word."""
    if len(word) <= 2:
        return word
    w = _step1a(word)
    w = _step1b(w)
    w = _step1c(w)
    w = _step2(w)
    w = _step3(w)
    w = _step4(w)
    w = _step5a(w)
    w = _step5b(w)
    return w
