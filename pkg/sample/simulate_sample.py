import json
import logging
import turbdiff
from turbdiff import analysis, field, tracer

def turn_on_logging():
    logging.basicConfig(level=logging.DEBUG)
    #or,
    #handler = logging.StreamHandler()
    #turbdiff.set_logging_options({
    #    'level': 'DEBUG',
    #    'handler': handler
    #})
    #handler.setFormatter(logging.Formatter(logging.BASIC_FORMAT))

# A small tracer ensemble in the diffusive phase, compared with the
# Taylor-Kubo prediction. Raise N_TRAJ and T_FINAL for a tighter estimate.
N_TRAJ = 32
T_FINAL = 30.0
MASTER_SEED = 7

#uncomment for verbose log
#turn_on_logging()

### Main logic begins
params = turbdiff.ModelParams(2, 0.25, 0.25, 1.0, turbdiff.ShapeFn.indicator(0.0, 1.0))
mode_config = tracer.ModeConfig(n_shells=16, modes_per_shell=8, k_min_ratio=1e-4)
integration = tracer.IntegrationConfig(tracer.default_dt(params), T_FINAL, sample_every=5)

table = field.ShellTable(params, mode_config.n_shells, mode_config.k_min_ratio)
print('Sampled energy {} of {}'.format(table.masses.sum(), table.total_energy))

ensemble = tracer.run_ensemble(params, mode_config, integration, N_TRAJ, MASTER_SEED,
                               n_jobs=2, table=table)
curve = analysis.msd(ensemble)
estimate = analysis.msd_slope(curve)
prediction = turbdiff.taylor_kubo(params).as_covariance()
report = analysis.compare(estimate, prediction)
### Main logic ends

print('MSD exponent: {}'.format(analysis.fit_exponent(curve).exponent))
print(json.dumps({'estimate': estimate.to_dict(), 'compare': report.to_dict()}, indent=2))
