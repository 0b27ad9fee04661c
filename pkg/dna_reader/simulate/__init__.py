from dna_reader.simulate.genome import ShredSpec, random_genome, shred
