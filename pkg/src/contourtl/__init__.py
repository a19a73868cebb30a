"""Exact computational toolkit for decorated planar diagram algebras.

The package works over the cyclotomic field Q(nu) with nu a primitive m-th
root of unity, with loop parameters d0,...,d_{m-1} kept symbolic or
specialized exactly. Diagrams are non-crossing pairings on n northern and n
southern boundary nodes, decorated with beads subject to a depth bound d
measured from the eastern frame edge.

Main entry points:

- ``Diagram``, ``compose``, ``flip``, ``enumerate_basis`` (diagram calculus)
- ``AlgebraContext`` / ``get_context``, ``AlgebraElement`` (the algebras)
- ``Weight``, ``standard_basis``, ``gram_matrix``, ``gram_determinant``
- ``restriction_filtration``, ``induction_support``
- ``check_all_axioms``, ``hom_space``, ``semisimplicity_certificate``
- the ``contourtl`` command-line tool (see ``contourtl --help``)
"""

from .cyclo import Cyc, phi_degree
from .poly import DPoly, det_cofactor, det_fraction_free
from .diagrams import (Diagram, compose, flip, identity_diagram, e_generator,
                       bead_generator, enumerate_basis, line_depth,
                       noncrossing_pairings, stratum_sizes)
from .algebra import (AlgebraContext, AlgebraElement, get_context, dimension,
                      effective_depth, e_element, t_element, generator_set,
                      epsilon_element, character_projector,
                      preidempotent_diagram, preidempotent_element,
                      embed_left, glue_corner, CornerIso, corner_check,
                      heredity_section_check, cyclic_quotient_check)
from .modules import (Weight, WeightLattice, weights, label_length,
                      validate_weight, StandardBasis, standard_basis,
                      standard_dimension, act, action_matrix, matrix_eval,
                      gram_entry, gram_matrix, gram_determinant,
                      gram_determinant_at, gram_symmetry_ok,
                      gram_diagonal_dominance_ok, generic_point,
                      FiltrationReport, restriction_filtration,
                      induction_support, oracle_regular_realization)
from .tower import (ModulePresentation, standard_presentation, localise,
                    globalise, intertwiner_space, conjugacy_witness,
                    presentations_conjugate, AxiomReport, check_axiom,
                    check_all_axioms, HomSpace, hom_space,
                    semisimplicity_certificate, semisimplicity_oracle,
                    simple_labels, section_label_counts)

__version__ = "0.1.0"
