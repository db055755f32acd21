import json
import logging
import turbdiff
from turbdiff import corrector
from turbdiff.constants import CorrectorOp, ScalingParameter

def turn_on_logging():
    logging.basicConfig(level=logging.DEBUG)

#uncomment for verbose log
#turn_on_logging()

### Main logic begins
shape = turbdiff.ShapeFn.indicator(0.0, 1.0)
chi1_params = turbdiff.ModelParams(2, 0.25, 0.5, 1.0, shape)
chi1_fit = corrector.fit_scaling(CorrectorOp.CHI1, chi1_params, [1e-3, 1e-4, 1e-5, 1e-6])

grad_params = turbdiff.ModelParams(2, 0.3, 0.9, 1.0, shape)
grad_fit = corrector.fit_scaling(CorrectorOp.GRAD_CHI1, grad_params,
                                 [1e-24, 1e-26, 1e-28, 1e-30], ScalingParameter.LAMBDA)
### Main logic ends

for fit in (chi1_fit, grad_fit):
    print(json.dumps(fit.to_dict(), indent=2))
