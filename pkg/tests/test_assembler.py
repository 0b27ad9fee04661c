import numpy as np
import pytest

from dna_reader.assembler import (OnlineAssembler, RunLimits, assemble_strands,
                                  ingest_read, process_stream, traversal_pass)
from dna_reader.common.sequence import KmerParams, Read
from dna_reader.data import DeBruijnGraph
from dna_reader.genes import CodonConfig
from dna_reader.io.reads import ReadSourceError
from dna_reader.simulate.genome import (ShredSpec, reconstructable_genome,
                                        shred)

# Two genes in one read: ATGAAATAA and ATGCCCTGA. All 4-mers are distinct.
TWO_GENE_READ = 'ATGAAATAACCCATGCCCTGA'
NO_LIMIT_MS = 10**9


class RecordingSink():

  def __init__(self):
    self.genes = []
    self.summaries = []

  def gene(self, gene):
    self.genes.append(gene.text)

  def summary(self, stats):
    self.summaries.append(stats)


def _graph(*reads, k):
  graph = DeBruijnGraph()
  params = KmerParams.create(k)
  for bases in reads:
    ingest_read(graph, Read.create(bases), params)
  return graph, params


def _run(source, max_genes=100, time_limit_ms=NO_LIMIT_MS, k=5, **kwargs):
  sink = RecordingSink()
  stats = process_stream(
      source,
      params=KmerParams.create(k),
      codons=CodonConfig.create(),
      limits=RunLimits.create(max_genes, time_limit_ms),
      sink=sink,
      **kwargs,
  )
  return stats, sink


def test_ingest_builds_chain():
  graph, params = _graph('ACGTA', k=4)
  assert list(graph.index) == ['ACG', 'CGT', 'GTA']
  assert [graph.successor(i) for i in range(3)] == [1, 2, None]
  assert graph.initials() == [0]


def test_ingest_short_read_changes_nothing():
  graph = DeBruijnGraph()
  assert ingest_read(graph, Read.create('ACG'), KmerParams.create(4)) == 0
  assert graph.node_count == 0


def test_ingest_is_idempotent():
  once, _ = _graph('ACGTACCGT', k=4)
  twice, _ = _graph('ACGTACCGT', 'ACGTACCGT', k=4)
  assert once.dump() == twice.dump()


def test_graph_independent_of_read_boundaries():
  whole, _ = _graph('ACGTTGCA', k=4)
  split, _ = _graph('ACGTTG', 'GTTGCA', k=4)
  assert whole.dump() == split.dump()


def test_assemble_spells_read_back():
  graph, params = _graph('ACGTA', k=4)
  strands = assemble_strands(graph, params)
  assert [s.text for s in strands] == ['ACGTA']
  assert strands[0].origin == 0


def test_assemble_empty_and_cyclic_graphs():
  assert assemble_strands(DeBruijnGraph(), KmerParams.create(3)) == []
  graph, params = _graph('AAAA', k=3)
  assert assemble_strands(graph, params) == []


def test_strand_windows_match_path():
  graph, params = _graph('GATTACAGATC', 'TTTCCCGGG', k=4)
  for strand in assemble_strands(graph, params):
    path = graph.walk_from(strand.origin)
    assert len(strand.text) == (params.k - 1) + (len(path) - 1)
    for offset, node in enumerate(path):
      assert strand.text[offset:offset + params.k - 1] == graph.resolve(node)


def test_converging_chains_share_tail():
  # Both reads end in CGTA; walks from the two initials re-traverse it
  graph, params = _graph('AACGTA', 'TTCGTA', k=4)
  strands = [s.text for s in assemble_strands(graph, params)]
  assert strands == ['AACGTA', 'TTCGTA']


def test_traversal_pass_counts_visits():
  graph, _ = _graph('ACGTA', 'TTTT', k=4)
  strands, visited = traversal_pass(graph)
  assert [s.text for s in strands] == ['ACGTA']
  assert visited == 3


def test_round_trip_reconstructs_genome():
  params = KmerParams.create(201)
  spec = ShredSpec.create(read_length=400, step=150)
  lengths = [2000, 8000, 16500, 20000]
  for trial in range(20):
    length = lengths[trial % len(lengths)]
    genome = reconstructable_genome(length, params.k, seed=trial)
    graph = DeBruijnGraph()
    for read in shred(genome, spec):
      ingest_read(graph, Read.create(read), params)
    strands = assemble_strands(graph, params)
    assert len(strands) == 1
    assert strands[0].text == genome


def test_round_trip_through_online_assembler():
  params = KmerParams.create(21)
  genome = reconstructable_genome(3000, params.k, seed=7)
  spec = ShredSpec.create(read_length=60, step=40)
  assembler = OnlineAssembler(params, CodonConfig.create())
  nodes = []
  for read in shred(genome, spec):
    assembler.add_read(Read.create(read))
    nodes.append(assembler.graph.node_count)
  assert nodes == sorted(nodes)
  assert assembler.passes == assembler.reads_processed
  strands, _ = traversal_pass(assembler.graph)
  assert [s.text for s in strands] == [genome]


def test_node_set_independent_of_read_order():
  rng = np.random.default_rng(5)
  reads = [''.join(rng.choice(list('ACGT'), size=12)) for _ in range(30)]
  forward, _ = _graph(*reads, k=4)
  backward, _ = _graph(*reversed(reads), k=4)
  initials = lambda g: {g.resolve(i) for i in g.initials()}
  assert set(forward.index) == set(backward.index)
  assert initials(forward) == initials(backward)


def test_gene_budget_is_checked_between_reads():
  stats, sink = _run([TWO_GENE_READ, 'CCCCATGTTTTAA'], max_genes=1)
  assert sink.genes == ['ATGAAATAA', 'ATGCCCTGA']
  assert stats.reads_processed == 1
  assert stats.genes_found == 2
  assert sink.summaries == [stats]


def test_zero_time_limit_processes_nothing():
  stats, sink = _run([TWO_GENE_READ], time_limit_ms=0)
  assert stats.reads_processed == 0
  assert stats.genes_found == 0
  assert sink.genes == []
  assert len(sink.summaries) == 1


def test_runs_to_end_of_stream_without_genes():
  stats, sink = _run(['CCCCGGGGCCCC', 'GGGGCCCCAAAA'])
  assert stats.reads_processed == 2
  assert stats.genes_found == 0
  assert sink.genes == []


def test_each_gene_is_reported_once():
  reads = [TWO_GENE_READ, TWO_GENE_READ.lower(), 'GG' + TWO_GENE_READ]
  stats, sink = _run(reads)
  assert sink.genes == ['ATGAAATAA', 'ATGCCCTGA']
  assert stats.genes_found == 2
  assert stats.reads_processed == 3


def test_raw_text_is_split_into_reads():
  stats, _ = _run(['ACGTANNNCCGTA', 'xx'])
  assert stats.reads_processed == 2
  assert stats.bases_processed == 10
  assert stats.average_read_length == 5


def test_traversal_interval_defers_genes_to_final_pass():
  reads = ['CCCCGGGGC', TWO_GENE_READ, 'TTTTGGGG']
  stats, sink = _run(reads, traversal_interval=10)
  assert stats.passes == 1
  assert sink.genes == ['ATGAAATAA', 'ATGCCCTGA']


def test_source_failure_reports_summary_then_raises():

  def failing_source():
    yield TWO_GENE_READ
    raise OSError('device unplugged')

  sink = RecordingSink()
  with pytest.raises(ReadSourceError):
    process_stream(
        failing_source(),
        params=KmerParams.create(5),
        codons=CodonConfig.create(),
        limits=RunLimits.create(100, NO_LIMIT_MS),
        sink=sink,
    )
  assert len(sink.summaries) == 1
  assert sink.summaries[0].reads_processed == 1
  assert sink.summaries[0].genes_found == 2


def test_emission_order_is_deterministic():
  rng = np.random.default_rng(6)
  reads = [''.join(rng.choice(list('ACGT'), size=40)) for _ in range(40)]
  _, first = _run(reads, k=7)
  _, second = _run(reads, k=7)
  assert first.genes
  assert first.genes == second.genes


def test_run_limits_validate():
  with pytest.raises(ValueError):
    RunLimits.create(0, 10)
  with pytest.raises(ValueError):
    RunLimits.create(1, -1)


def test_sink_errors_are_not_source_errors():

  class BrokenSink(RecordingSink):

    def gene(self, gene):
      raise BrokenPipeError('stdout closed')

  with pytest.raises(BrokenPipeError) as info:
    process_stream(
        [TWO_GENE_READ],
        params=KmerParams.create(5),
        codons=CodonConfig.create(),
        limits=RunLimits.create(100, NO_LIMIT_MS),
        sink=BrokenSink(),
    )
  assert not isinstance(info.value, ReadSourceError)


def test_source_is_closed_when_budget_ends_run():
  state = {'pulled': 0, 'closed': False}

  def source():
    try:
      for _ in range(5):
        state['pulled'] += 1
        yield TWO_GENE_READ
    finally:
      state['closed'] = True

  stats, _ = _run(source(), max_genes=1)
  assert stats.reads_processed == 1
  assert state['pulled'] == 1
  assert state['closed']
