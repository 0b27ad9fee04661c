from dna_reader.data.debruijn import DeBruijnGraph
from dna_reader.data.index import MerIndex
