from tempokey.distance.solver import (
    CutoffResult,
    QberRow,
    RateCurve,
    RatePoint,
    find_cutoff,
    qber_sweep,
    rate_cutoff,
    secure_distance,
    slope_db_per_km,
    sweep,
)
