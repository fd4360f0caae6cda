"""
Copyright © 2026 The golayft developers.
"""
from .circuit import Census, Circuit, Kind, Location, census_of, permute_circuit, sector_census
from .prep import (Schedule, latin_rectangle_prep, latin_schedule, load_circuit, overlap4_preps,
                   overlap_permutations, overlap_prep_golay, overlap_synthesize, steane4_preps,
                   steane_latin_prep, published_schedules)
from .network import (Network, assemble, ec_network, exrec_network, four_ancilla_network,
                      gate_exrec_network, single_block_network, twelve_ancilla_network, two_ancilla_network)
from .propagate import FaultItems, accepted, fault_effects, fault_items, propagate
