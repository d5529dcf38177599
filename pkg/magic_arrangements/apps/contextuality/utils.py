"""
Utility functions shared by the contextuality analyses.
"""
import json
import os
from collections import namedtuple
from dataclasses import dataclass, replace

from django.conf import settings


FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')


Violation = namedtuple('Violation', ['kind', 'subject', 'detail'])


@dataclass(frozen=True)
class Limits:
    """
    Resource caps for the bounded (possibly non-terminating) procedures.
    """
    oracle_cap: int
    coset_rows: int
    kb_rules: int
    kb_steps: int

    @classmethod
    def from_settings(cls, **overrides):
        """
        Build limits from Django settings, replacing any value passed (and not None) in ``overrides``.
        """
        limits = cls(
            oracle_cap=settings.ORACLE_CAP,
            coset_rows=settings.COSET_TABLE_MAX_ROWS,
            kb_rules=settings.KNUTH_BENDIX_MAX_RULES,
            kb_steps=settings.KNUTH_BENDIX_MAX_STEPS,
        )
        return replace(limits, **{key: value for key, value in overrides.items() if value is not None})


class CheckResult:
    """
    Outcome of a verification: ok when no violation was collected.
    """
    def __init__(self, violations=None, **details):
        self.violations = list(violations or [])
        self.details = details

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, subject, detail):
        self.violations.append(Violation(kind, subject, detail))

    def extend(self, other):
        self.violations.extend(other.violations)

    def as_dict(self):
        data = {
            'ok': self.ok,
            'violations': [violation._asdict() for violation in self.violations],
        }
        data.update(self.details)
        return data

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return '<CheckResult ok={} violations={}>'.format(self.ok, len(self.violations))


def fixture_path(name):
    return os.path.join(FIXTURES_DIR, name)


def read_fixture(name):
    with open(fixture_path(name), encoding='utf-8') as fixture:
        return fixture.read()


def dump_report(report):
    """
    Serialize a report deterministically: sorted keys, fixed separators, trailing newline.
    """
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def egcd(a, b):
    """
    Extended Euclid.

    Returns:
        (g, x, y) with a*x + b*y == g == gcd(a, b) and g >= 0.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def modinv(a, m):
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise ValueError('{} has no inverse modulo {}'.format(a, m))
    return x % m


def invert_word(word):
    return tuple((symbol, -exponent) for symbol, exponent in reversed(word))


def free_reduce(word):
    """
    Cancel adjacent ``x x^-1`` pairs in a word of (symbol, +1/-1) steps.
    """
    reduced = []
    for symbol, exponent in word:
        if reduced and reduced[-1][0] == symbol and reduced[-1][1] == -exponent:
            reduced.pop()
        else:
            reduced.append((symbol, exponent))
    return tuple(reduced)


def word_to_text(word):
    if not word:
        return '1'
    return ' '.join(
        symbol if exponent == 1 else '{}^{}'.format(symbol, exponent)
        for symbol, exponent in word
    )


def word_from_text(text):
    text = text.strip()
    if text == '1':
        return ()
    word = []
    for token in text.split():
        symbol, _, exponent = token.partition('^')
        exponent = int(exponent) if exponent else 1
        step = 1 if exponent > 0 else -1
        word.extend([(symbol, step)] * abs(exponent))
    return tuple(word)


def exponent_sums(word, symbols):
    """
    Returns:
        list with the signed number of occurrences of each symbol in ``word``.
    """
    index = {symbol: position for position, symbol in enumerate(symbols)}
    sums = [0] * len(symbols)
    for symbol, exponent in word:
        sums[index[symbol]] += exponent
    return sums
