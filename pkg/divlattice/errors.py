"""
Errors raised by divlattice.

Every error carries a short machine-parsable ``code`` and the exit status the
command line front end uses when the error escapes a command.
"""


class DivLatticeError(ValueError):
    code = 'E_INPUT'
    exit_status = 2

    def __str__(self):
        return ' '.join(str(a) for a in self.args)

    def line(self):
        """The single-line form printed by the command line front end"""
        return 'error: %s: %s' % (self.code, self)


class ParseError(DivLatticeError):
    code = 'E_PARSE'

    def __init__(self, message, text='', position=0):
        super().__init__(message)
        self.text = text
        self.position = position

    def __str__(self):
        return '%s at position %d' % (self.args[0], self.position)


class LatticeMismatchError(DivLatticeError):
    code = 'E_LATTICE_MISMATCH'

    def __init__(self, first, second):
        super().__init__('divisors live on different lattices: %r and %r' % (first.name, second.name))
        self.first = first
        self.second = second


class PreconditionError(DivLatticeError):
    code = 'E_PRECONDITION'


class ModelError(DivLatticeError):
    code = 'E_MODEL'


class UnsupportedCaseError(DivLatticeError):
    code = 'E_UNSUPPORTED'


class BudgetExceededError(DivLatticeError):
    code = 'E_BUDGET'
    exit_status = 3

    def __init__(self, required, budget):
        super().__init__('enumeration needs %d cases but the budget is %d; raise --budget to continue'
                         % (required, budget))
        self.required = required
        self.budget = budget
