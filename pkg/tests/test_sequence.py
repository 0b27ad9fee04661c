import numpy as np
import pytest

from dna_reader.common.sequence import (DEFAULT_K, KmerParams, Read, kmer_to_edge,
                                        kmers, normalize)


def _bases(reads):
  return [r.bases for r in reads]


def test_normalize_uppercases():
  assert _bases(normalize('acgt')) == ['ACGT']


def test_normalize_splits_on_invalid_characters():
  assert _bases(normalize('ACGNNTT')) == ['ACG', 'TT']
  assert _bases(normalize('ac gt\tA-c\n')) == ['AC', 'GT', 'A', 'C']


def test_normalize_without_valid_run():
  assert normalize('NN--') == []
  assert normalize('') == []


def test_normalize_is_idempotent():
  rng = np.random.default_rng(0)
  symbols = list('ACGTacgtN- x')
  for _ in range(200):
    text = ''.join(rng.choice(symbols, size=rng.integers(0, 60)))
    reads = normalize(text)
    joined = 'N'.join(r.bases for r in reads)
    assert normalize(joined) == reads


def test_read_create_validates():
  assert Read.create('ACGT').length == 4
  with pytest.raises(ValueError):
    Read.create('')
  with pytest.raises(ValueError):
    Read.create('ACGN')
  with pytest.raises(ValueError):
    Read.create('acgt')


def test_kmer_params():
  assert KmerParams.create().k == DEFAULT_K == 201
  assert KmerParams.create(3).k == 3
  with pytest.raises(ValueError):
    KmerParams.create(2)


def test_kmers_enumeration():
  assert kmers(Read.create('ACGTA'), KmerParams.create(4)) == ['ACGT', 'CGTA']
  assert kmers(Read.create('ACG'), KmerParams.create(4)) == []
  read = Read.create('A' * 201)
  assert len(kmers(read, KmerParams.create())) == 1


def test_kmers_count_matches_brute_force():
  rng = np.random.default_rng(1)
  for _ in range(100):
    length = int(rng.integers(1, 40))
    k = int(rng.integers(3, 9))
    bases = ''.join(rng.choice(list('ACGT'), size=length))
    found = kmers(Read.create(bases), KmerParams.create(k))
    expected = []
    for i in range(length):
      if i + k <= length:
        expected.append(bases[i:i+k])
    assert found == expected
    assert len(found) == max(0, length - k + 1)


def test_kmer_to_edge():
  assert kmer_to_edge('ACGT', KmerParams.create(4)) == ('ACG', 'CGT')
  assert kmer_to_edge('AAAA', KmerParams.create(4)) == ('AAA', 'AAA')
  left, right = kmer_to_edge('GATTACA', KmerParams.create(7))
  assert left + 'A' == 'GATTACA'
  assert 'G' + right == 'GATTACA'
  with pytest.raises(ValueError):
    kmer_to_edge('ACG', KmerParams.create(4))
  with pytest.raises(ValueError):
    kmer_to_edge('ACGTA', KmerParams.create(4))
