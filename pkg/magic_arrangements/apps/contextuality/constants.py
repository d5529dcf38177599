# Generator name reserved for the central element of a solution group.
RESERVED_GENERATOR = 'J'

# Realization validation modes
TOPOLOGICAL = 'topological'
COMMUTATIVE = 'commutative'
REALIZATION_MODE_CHOICES = [
    (TOPOLOGICAL, 'Topological (cellular map to the single-vertex model)'),
    (COMMUTATIVE, 'Commutative (chain map to the single-vertex model)'),
]

# Classical solver / oracle outcomes
FEASIBLE = 'feasible'
INFEASIBLE = 'infeasible'
TOO_LARGE = 'too-large'

# Fundamental group triviality
TRIVIAL = 'trivial'
NONTRIVIAL = 'nontrivial'
UNKNOWN = 'unknown'

# Coprime criterion
NON_MAGIC_CERTIFIED = 'non-magic-certified'
INCONCLUSIVE = 'inconclusive'

# Rewriting verdicts
REDUCES_TO_IDENTITY = 'reduces-to-identity'
REDUCES_TO_J_POWER = 'reduces-to-J-power'
IRREDUCIBLE_DISTINCT = 'irreducible-distinct'

# Lift test
LIFT_EXISTS = 'lift-exists'
LIFT_FAILS = 'lift-fails'

# Theorem A and overall classification
MAGIC = 'magic'
NON_MAGIC = 'non-magic'
NOT_APPLICABLE = 'not-applicable'
MAGIC_CERTIFIED = 'magic(certified)'
NON_MAGIC_CERTIFIED_CLASSIFICATION = 'non-magic(certified)'
UNDETERMINED = 'undetermined'

# Rules that can certify a classification in the analysis report
RULE_CLASSICAL_SOLUTION = 'classical-solution'
RULE_COPRIME_ORDER = 'coprime-order'
RULE_SIMPLY_CONNECTED = 'simply-connected-realization'
RULE_QUANTUM_AND_INFEASIBLE = 'quantum-realization-and-classical-infeasible'

# Kuratowski witness kinds
K5 = 'K5'
K33 = 'K3,3'

# Shipped fixture file names, relative to the app's fixtures directory
MERMIN_SQUARE = 'mermin_square.json'
MERMIN_SQUARE_RP2 = 'mermin_square_rp2.json'
MERMIN_STAR = 'mermin_star.json'
SQUARE_OPERATORS = 'square_ops.json'
STAR_OPERATORS = 'star_ops.json'
TORUS_REALIZATION = 'torus.json'
RP2_REALIZATION = 'rp2.json'
STAR_TORUS_REALIZATION = 'star_torus.json'
CONTEXT_CYCLE = 'context_cycle.json'
