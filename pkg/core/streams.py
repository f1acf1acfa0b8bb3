# core/streams.py

"""
Счётчиковые потоки случайных чисел на Philox.

Ключ генератора: (seed, номер канала); позиция в потоке однозначно задаётся
номером испытания. Поэтому любой диапазон испытаний можно посчитать
отдельно, в любом порядке и в любом потоке выполнения, результат тот же.
"""

from enum import IntEnum

import numpy as np

SEED_MASK = 0xFFFF_FFFF_FFFF_FFFF

# Philox4x64 выдаёт четыре 64-битных слова на одно значение счётчика
WORDS_PER_COUNTER = 4

_MANTISSA_SCALE = 1.0 / (1 << 52)


class Channel(IntEnum):
    """Номер потока для каждого типа усиления"""
    H1 = 0
    H2 = 1
    G1P = 2
    G2P = 3
    G2_STAR = 4
    G1_STAR = 5


def raw_words(seed: int, channel: int, first: int, count: int) -> np.ndarray:
    """64-битные слова с позиций first .. first + count - 1 потока (seed, channel)"""
    if count < 0 or first < 0:
        raise ValueError("позиция и длина должны быть неотрицательными")
    counter, skip = divmod(first, WORDS_PER_COUNTER)
    bit_generator = np.random.Philox(key=[seed & SEED_MASK, int(channel)], counter=counter)
    words = bit_generator.random_raw(skip + count)
    return np.atleast_1d(words)[skip:]


def open_uniforms(seed: int, channel: int, first: int, count: int) -> np.ndarray:
    """Равномерные числа строго внутри (0, 1): 52 старших бита плюс половина шага, без округления"""
    words = raw_words(seed, channel, first, count)
    return ((words >> np.uint64(12)).astype(np.float64) + 0.5) * _MANTISSA_SCALE
