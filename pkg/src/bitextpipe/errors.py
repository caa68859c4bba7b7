"""Exception hierarchy shared by all pipeline modules."""


class PipelineError(Exception):
    """Base class for every error raised by this package."""


class TagError(PipelineError):
    """Malformed or unknown language tag."""


class CorpusError(PipelineError):
    """Invalid corpus input: misaligned files, bad encoding, broken rows."""


class LexiconError(PipelineError):
    """Invalid or empty bilingual lexicon."""


class PlanError(PipelineError):
    """Sampling plan does not match the corpus it is applied to."""


class AugmentError(PipelineError):
    """Augmentation contract violation (e.g. non-English source side)."""


class MetricError(PipelineError):
    """Invalid metric input or configuration."""


class ConfigError(PipelineError):
    """Invalid run configuration (CLI flags, config file, train phase)."""
