"""Construction D lattices from BCH code towers, list decoded in the
Euclidean norm via soft-decision Reed-Solomon decoding."""

from .gf import FieldElem, FieldSpec, field_arith, field_make, subfield_embed
from .poly import BiPoly, Poly, poly_eval
from .codes import (BchCode, CodeTower, LinearCode, RsCode, bch_make,
                    code_contains, code_from_json, code_to_json, rs_encode,
                    rs_make, tower_basis, tower_from_codes, tower_make)
from .softdecode import (CostCapExceeded, DecodeResult, KvError,
                         KvParameterError, MultiplicityMatrix,
                         ReliabilityVector, interpolate, kv_decode,
                         multiplicity_assign, y_roots)
from .euclid import (TorusWord, euclid_list_decode, list_size_bound,
                     reliability_map, torus_norm, torus_norm_sq)
from .optimality import (beta_from_delta, kkt_verify, quadratic_min_oracle,
                         rate_bound_check, verify_optimality)
from .lattice import (ConstructionDLattice, determinant, enumerate_lattice,
                      hermite_report, lattice_from_json, lattice_make,
                      lattice_to_json, member, min_distance, representative)
from .decoder import (DecoderStack, bch_lattice_decode, call_count_audit,
                      enumeration_oracle, lattice_list_decode,
                      make_bch_stack, round_decode_z, zp_ball_decode)
from .harness import (ExperimentConfig, build_lattice, run_experiment,
                      sample_lattice_vector, sample_noise)
from .cli import cli_main

__version__ = "0.1.0"
