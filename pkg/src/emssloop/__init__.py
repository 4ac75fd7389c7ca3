"""Hochschild cohomology rings, EMSS pages and loop homology presentations."""
from .algebra import (AlgebraMorphism, AlgebraPresentation, GeneratorSpec, ModuleSpec, Relation,
                      exterior_algebra, gorenstein_dimension, ground_field, polynomial_algebra,
                      tensor, truncated_polynomial)
from .complexes import (CohomologyResult, FreeComplex, bar_complex_truncated, check_d_squared,
                        cohomology, koszul_hochschild_complex, koszul_tor_complex,
                        periodic_hochschild_complex)
from .emss import (CollapseCertificate, E2Page, EInfinityPage, Refusal, WindowTooNarrowError,
                   assume_collapse, build_e2, collapse_by_sparsity, einfinity)
from .extension import (LiftObstructionReport, RelationCandidate, ZeroColumnLift,
                        assemble_loop_homology, enumerate_lift_candidates, epimorphism_transfer,
                        zero_column_lift)
from .hochschild import (BarModel, CertificationError, HHPresentation, cup_product, hh_free,
                         hh_induced_map, hh_kunneth, hh_module_coefficients, hh_polynomial, hh_ring)
from .pipeline import loop_homology, relative_loop_homology
from .scalars import Bidegree, DimensionSeries, FieldSpec, Scalar, series_product

__version__ = "0.1.0"
