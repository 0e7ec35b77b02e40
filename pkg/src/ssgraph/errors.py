class InternalError(AssertionError):
	"""A computed result contradicts an identity the library relies on."""


class ParseError(ValueError):
	def __init__(self, message, line=None, column=None):
		self.message = message
		self.line = line
		self.column = column
		super().__init__(str(self))

	def __str__(self):
		if self.line is None:
			return self.message
		if self.column is None:
			return "line %d: %s" % (self.line, self.message)
		return "line %d, column %d: %s" % (self.line, self.column, self.message)


class InvalidSystem(ValueError):
	"""Raised when a presentation fails validation; carries every violation."""

	def __init__(self, problems):
		self.problems = list(problems)
		super().__init__("; ".join(self.problems))
