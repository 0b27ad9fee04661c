from dna_reader.assembler import OnlineAssembler, process_stream
from dna_reader.data import DeBruijnGraph
from dna_reader.genes import CodonConfig, GeneRegistry, extract_genes
