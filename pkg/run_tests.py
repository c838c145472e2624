import unittest
import argparse
import logging
import sys

from edgeweave.tests.test_models import (
    TestDevice,
    TestTargetGraph,
    TestSchedule,
    TestPlanModel,
    TestEffectiveModel,
    TestEvolutionResult
)
from edgeweave.tests.test_hamiltonian import (
    TestFockSpace,
    TestBoseHubbard,
    TestHamiltonianMatrix
)
from edgeweave.tests.test_effective import (
    TestBloch,
    TestStar,
    TestEbdLa,
    TestSewScaling
)
from edgeweave.tests.test_dynamics import (
    TestEvolve,
    TestCtqw,
    TestPopulationError,
    TestWalkSpeed
)
from edgeweave.tests.test_floquet import (
    TestPeriodUnitary,
    TestPewEffective,
    TestPewScaling,
    TestSimulatePew
)
from edgeweave.tests.test_weaver import (
    TestPredictions,
    TestPlanEmbedding,
    TestValidatePlan,
    TestCompileSchedule
)
from edgeweave.tests.test_io import (
    TestBlockingIO,
    TestAwaitingIO,
    TestRendering
)
from edgeweave.tests.test_settings import (
    TestSolverSettings,
    TestPlanSettings,
    TestExperimentConfig
)
from edgeweave.tests.test_blocking import TestBlocking
from edgeweave.tests.test_awaiting import TestAwaiting
from edgeweave.tests.test_cli import TestCli


cli = argparse.ArgumentParser()

cli.add_argument("--verbose", "-v", action="store_true")

args = vars(cli.parse_args())


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO if args["verbose"] else logging.ERROR
    )

    unittest.main(argv=[sys.argv[0]])
