"""
Pregroup grammars and a cup-only parser.

A sentence is grammatical when the types of its words reduce to the
sentence type by planar cups, i.e. by cancelling adjacent pairs ``(a, a.r)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from diagram_kernel import rigid
from diagram_kernel.rigid import Ob, Ty


class UnknownWord(LookupError):
    """Raised when a sentence uses a word outside the vocabulary."""


class Word(rigid.Box):
    """
    A word as a box with empty domain and its pregroup type as codomain.

    >>> Word('Alice', Ty('n')).dom
    Ty()
    """
    def __init__(self, name, cod, data=None, _dagger=False):
        dom = Ty()
        if _dagger:
            dom, cod = cod, dom
        super().__init__(name, dom, cod, data=data, _dagger=_dagger)

    def dagger(self):
        return Word(self.name, self.dom if self.is_dagger else self.cod,
                    data=self.data, _dagger=not self.is_dagger)

    def __repr__(self):
        text = "Word({!r}, {!r})".format(
            self.name, self.dom if self.is_dagger else self.cod)
        return text + ".dagger()" if self.is_dagger else text


@dataclass(frozen=True)
class Grammar:
    """
    A pregroup grammar: a vocabulary, basic types, a sentence type and a
    dictionary listing the types of each word, in order of preference.
    """
    vocab: tuple
    basic: tuple
    sentence: str
    dictionary: tuple

    def __init__(self, vocab, basic, sentence, dictionary):
        dictionary = tuple((word, _as_ty(ty)) for word, ty in dictionary)
        object.__setattr__(self, "vocab", tuple(vocab))
        object.__setattr__(self, "basic", tuple(basic))
        object.__setattr__(self, "sentence", sentence)
        object.__setattr__(self, "dictionary", dictionary)
        if sentence not in self.basic:
            raise ValueError("Sentence type {!r} is not basic.".format(sentence))
        for word, ty in dictionary:
            if word not in self.vocab:
                raise ValueError("{!r} is not in the vocabulary.".format(word))
            for obj in ty:
                if obj.name not in self.basic:
                    raise ValueError("Type {} of {!r} uses a non-basic atom."
                                     .format(ty, word))

    def types(self, word):
        if word not in self.vocab:
            raise UnknownWord(word)
        return [ty for other, ty in self.dictionary if other == word]

    @property
    def sentence_type(self):
        return Ty(self.sentence)


def _as_ty(value):
    if isinstance(value, rigid.Ty):
        return value
    return Ty(*(Ob(name, z) for name, z in value))


def cancels(left, right):
    """ Whether a cup can connect the atoms ``left`` and ``right``. """
    return left.name == right.name and right.z == left.z + 1


def _reduction(atoms, target):
    """
    Cup positions reducing ``atoms`` to ``target``, or None.

    Spans between kept atoms must reduce to nothing.  The first matching
    partner of each atom is tried first.
    """
    atoms, target = tuple(atoms), tuple(target)

    @lru_cache(maxsize=None)
    def empty(i, j):
        """ Cup pairs reducing atoms[i:j] to nothing, or None. """
        if i == j:
            return ()
        for m in range(i + 1, j, 2):
            if cancels(atoms[i], atoms[m]):
                inner, outer = empty(i + 1, m), empty(m + 1, j)
                if inner is not None and outer is not None:
                    return ((i, m), ) + inner + outer
        return None

    @lru_cache(maxsize=None)
    def align(i, t):
        if t == len(target):
            return empty(i, len(atoms))
        for p in range(i, len(atoms)):
            if atoms[p] == target[t]:
                before, after = empty(i, p), align(p + 1, t + 1)
                if before is not None and after is not None:
                    return before + after
        return None

    return align(0, 0)


def _cups_diagram(words, pairs):
    """ Words side by side, then cups placed leftmost innermost first. """
    diagram = rigid.Diagram.id(Ty())
    for word in words:
        diagram = diagram @ word
    wires = list(range(len(diagram.cod)))
    partner = {}
    for i, j in pairs:
        partner[i], partner[j] = j, i
    while True:
        for k in range(len(wires) - 1):
            if partner.get(wires[k]) == wires[k + 1]:
                break
        else:
            return diagram
        cod = diagram.cod
        cup = rigid.Cup(cod[k:k + 1])
        diagram = diagram >> rigid.Diagram.id(cod[:k]) @ cup\
            @ rigid.Diagram.id(cod[k + 2:])
        del wires[k:k + 2]


def parse(grammar, words, target=None, all_parses=False):
    """
    Parse a list of words into a diagram of type ``target``, the sentence
    type by default.

    Dictionary choices are tried in order, the first parse is returned or
    None if there is none.  With ``all_parses`` a list of one parse for each
    successful choice of types is returned instead.

    >>> n, s = Ty('n'), Ty('s')
    >>> grammar = Grammar(['Alice', 'loves', 'Bob'], ['n', 's'], 's', [
    ...     ('Alice', n), ('Bob', n), ('loves', n.r @ s @ n.l)])
    >>> parse(grammar, ['Alice', 'loves', 'Bob']).cod
    Ty('s')
    >>> parse(grammar, ['Alice', 'Bob']) is None
    True
    """
    words = list(words.split() if isinstance(words, str) else words)
    target = grammar.sentence_type if target is None else _as_ty(target)
    choices = [grammar.types(word) for word in words]
    results = []
    for types in itertools.product(*choices):
        atoms = [obj for ty in types for obj in ty]
        pairs = _reduction(atoms, list(target))
        if pairs is None:
            continue
        diagram = _cups_diagram(
            [Word(word, ty) for word, ty in zip(words, types)], pairs)
        if not all_parses:
            return diagram
        results.append(diagram)
    return results if all_parses else None


def example_grammar():
    """ Numbers, addition and equality. """
    n, s = Ty('n'), Ty('s')
    return Grammar(
        vocab=["one", "two", "three", "plus", "equals"],
        basic=["n", "s"], sentence="s",
        dictionary=[("one", n), ("two", n), ("three", n),
                    ("plus", n.r @ n @ n.l), ("equals", n.r @ s @ n.l)])
