"""Bayesian plan recognition over word/entity stories."""

from ._planrec import (  # noqa: F401
    BayesNet,
    Config,
    Error,
    InconsistentEvidence,
    ParseError,
    PlanLibrary,
    Session,
    Story,
    ValidationError,
    build_network,
    enumerate_posterior,
    fragment_mention_lift,
    fragment_ratio,
    fragment_ratio_by_inference,
    load_library,
    load_story,
    marginals,
    mention_lift,
    posterior,
    preset,
    knob_preset,
    recognize,
    sweep_equality_prior,
    to_dot,
)
