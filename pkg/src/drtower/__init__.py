"""Exact computations around Kummer covers of tori, Deligne-Lusztig varieties and
the Bruhat-Tits building of PGL_{d+1}."""

from .arith import (CharacterIndex, cuspidal_dimension, gaussian_binomial, gcd_list,
                    green_orbit, is_primitive)
from .building import (CechE1Report, SimplexType, TruncatedBuilding, beta_values,
                       bfs_vertices, cech_e1, jl_multiplicity, level_of, m_and_vanishing,
                       star_census)
from .derham import (CohomClass, CoverSpec, IsoForm, LaurentPoly, TorusSpec, canonical_form,
                     cohomology_dimension, differential, integrate, isotypic_dimension,
                     kunneth_dimension, make_cover, reduce_to_class)
from .dl import (DLParams, check_free_scaling_action, check_gl_invariance, enumerate_dl,
                 enumerate_omega, moore_det, u_tilde_eval)
from .errors import BudgetExceeded, NotClosed, ValidationError
from .fields import GF, FqElem, extension_of, field_of_order, gf
from .koszul import koszul_oracle
from .torseur import TorseurClass, add_classes, etale_rank, pi0_of_class, split_product_class

__version__ = "0.1.0"
