from .badring import BadRingLimit, bad_colon_chain, truncated_bad_ring
from .subring import SubringModel, subring_colon_identities
from .trivext import TrivialExtension, tx_height, tx_p_grade, tx_parameter
from .valuation import ValuationModel, val_colon, val_example37, val_member, val_value
