from .field import FieldSpec, FieldElement, make_field, field_for_order, is_prime_power
from .field import elem_rank, elem_from_rank, arith, legendre, legendre_bruteforce
from .field import chi_inner_shifted, trivial_character_inner
