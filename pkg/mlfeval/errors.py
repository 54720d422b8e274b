'''
Exceptions raised by mlfeval

Validation problems derive from ValueError, numerical problems from
ArithmeticError, so that callers can catch either family without importing
this module.
'''


class MLFError(Exception):
    '''
    Base class of all mlfeval errors
    '''


class InvalidParameters(MLFError, ValueError):
    pass


class DeltaOutOfRange(MLFError, ValueError):
    '''
    A contour angle violates its admissible bounds

    Attributes: `name` ('delta1', 'delta2' or 'delta'), `value`, `lower`
    (exclusive) and `upper` (inclusive unless `upper_open`).
    '''
    def __init__(self, name, value, lower, upper, upper_open=False):
        self.name = name
        self.value = value
        self.lower = lower
        self.upper = upper
        self.upper_open = upper_open
        bracket = ')' if upper_open else ']'
        super().__init__(
            f'{name}={value!r} outside ({lower!r}, {upper!r}{bracket}')


class MuConstraintViolated(MLFError, ValueError):
    pass


class Param3NotAvailable(MLFError, ValueError):
    pass


class InadmissibleTheta(MLFError, ValueError):
    '''
    The argument angle is not strictly inside the admissible interval
    '''
    def __init__(self, theta, interval, where=''):
        self.theta = theta
        self.interval = interval
        msg = f'theta={theta!r} not in ({interval.lo!r}, {interval.hi!r})'
        if where:
            msg += f' for {where}'
        super().__init__(msg)


class SingularDenominator(MLFError, ZeroDivisionError):
    pass


class NoDecay(MLFError, ValueError):
    pass


class NonIntegrable(MLFError, ValueError):
    pass


class NonFiniteEvaluation(MLFError, ArithmeticError):
    pass


class QuadratureFailure(MLFError, ArithmeticError):
    '''
    The adaptive quadrature did not meet its tolerance

    The best available estimate is kept in `result`.
    '''
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class MaxSubdivisionsExceeded(QuadratureFailure):
    pass


class SeriesDivergence(MLFError, ArithmeticError):
    pass
