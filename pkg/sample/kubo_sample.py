import json
import logging
import os
import sys
import turbdiff
from turbdiff import kubo

def turn_on_logging():
    logging.basicConfig(level=logging.DEBUG)
    #or,
    #handler = logging.StreamHandler()
    #turbdiff.set_logging_options({
    #    'level': 'DEBUG',
    #    'handler': handler
    #})
    #handler.setFormatter(logging.Formatter(logging.BASIC_FORMAT))

# You can provide model parameters by using a JSON file. Either
# through a command line argument, 'python kubo_sample.py parameters.json', or
# specifying in an environment variable of TURBDIFF_SAMPLE_PARAMETERS_FILE.
# Without one the closed-form case below is used.
#
# {
#    "d": 2,
#    "alpha": 0.25,
#    "beta": 0.25,
#    "cutoff": 1.0,
#    "shape": {"kind": "indicator", "lo": 0.0, "hi": 1.0}
# }

parameters_file = (sys.argv[1] if len(sys.argv) == 2 else
                   os.environ.get('TURBDIFF_SAMPLE_PARAMETERS_FILE'))

if parameters_file:
    with open(parameters_file, 'r') as f:
        sample_parameters = json.loads(f.read())
else:
    sample_parameters = {
        'd': 2, 'alpha': 0.25, 'beta': 0.25, 'cutoff': 1.0,
        'shape': {'kind': 'indicator', 'lo': 0.0, 'hi': 1.0},
        }

#uncomment for verbose log
#turn_on_logging()

### Main logic begins
params = turbdiff.ModelParams.from_dict(sample_parameters)
print('Phase: {}'.format(turbdiff.classify_phase(params.alpha, params.beta)))

one_sided = turbdiff.taylor_kubo(params)
print('One-sided K:\n{}'.format(one_sided.value))
print('Brownian covariance D* = K + K^T:\n{}'.format(one_sided.as_covariance().value))

for eps in (1.0, 0.1, 0.01, 1e-3):
    d_eps = turbdiff.regularized_diffusivity(params, eps)
    print('D_eps at eps={}: {}'.format(eps, d_eps.value[0, 0]))

print('E|V|^2 = {}'.format(kubo.eulerian_correlation(params, 0.0).trace()))
### Main logic ends
