"""Variable contexts: the ordered, role-tagged variable lists polynomials live over."""

from dataclasses import dataclass, field

SOURCE = "source"
PARAMETER = "parameter"


class ContextMismatchError(ValueError):
    """Raised when operands do not share a variable context."""


@dataclass(frozen=True)
class VariableContext:
    """Ordered list of distinct variable names with source/parameter roles.

    The declaration order is the exponent-vector order for every polynomial
    over this context, so it is part of the value: two contexts are equal only
    if names, order and roles all agree.
    """

    names: tuple
    roles: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise ValueError(f"duplicate variable names in {self.names}")
        if len(self.roles) != len(self.names):
            raise ValueError("one role per variable required")
        for role in self.roles:
            if role not in (SOURCE, PARAMETER):
                raise ValueError(f"unknown role {role!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def make(cls, source_vars, parameter_vars=()):
        """Context with the given source variables followed by parameters."""
        names = tuple(source_vars) + tuple(parameter_vars)
        roles = (SOURCE,) * len(tuple(source_vars)) + (PARAMETER,) * len(tuple(parameter_vars))
        return cls(names, roles)

    def __len__(self):
        return len(self.names)

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def source_indices(self):
        return tuple(i for i, r in enumerate(self.roles) if r == SOURCE)

    @property
    def parameter_indices(self):
        return tuple(i for i, r in enumerate(self.roles) if r == PARAMETER)

    @property
    def source_names(self):
        return tuple(self.names[i] for i in self.source_indices)

    @property
    def parameter_names(self):
        return tuple(self.names[i] for i in self.parameter_indices)


def check_same_context(a, b):
    if a.context is not b.context and a.context != b.context:
        raise ContextMismatchError(
            f"operands use different variable contexts: {a.context.names} vs {b.context.names}"
        )
