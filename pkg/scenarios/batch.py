import logging
import threading
from collections import namedtuple

from flows.integrate import integrate
from guidepath.app_settings import get_settings
from guidepath.exceptions import CaptureFailure, SafetyViolation
from guidepath.timing import time_to_logger

from .scenario import make_field


logger = logging.getLogger("guidepath.scenarios")

performance_logger = logging.getLogger("guidepath.performance.batch")

# failure is the SafetyViolation or CaptureFailure that ended the run early, if any; trajectory is then partial
Run = namedtuple("Run", ["index", "start", "trajectory", "failure"])


def simulate_start(scenario, plan, index, start):
    sim = scenario.sim
    field = make_field(scenario.field, plan)
    try:
        trajectory = integrate(field, start, t_max=sim.t_max, dt=sim.dt, delta=sim.delta, tol=sim.tol)
    except (SafetyViolation, CaptureFailure) as e:
        return Run(index, start, e.trajectory, e)

    logger.info("start %d: %d samples, %d events", index, len(trajectory), len(trajectory.events))
    return Run(index, start, trajectory, None)


def run_batch(scenario, starts, plan=None, num_workers=None):
    """
    Integrates the scenario from every start, NUM_WORKERS at a time, each in its own thread. Fields are built per run
    and plans are read-only, so the threads share nothing mutable. The runs are returned in the order of `starts`.
    """
    num_workers = get_settings().NUM_WORKERS if num_workers is None else num_workers
    worker_semaphore = threading.Semaphore(num_workers)
    results = [None] * len(starts)
    exceptions = [None] * len(starts)

    def non_failing_function(index, start):
        try:
            results[index] = simulate_start(scenario, plan, index, start)
        except Exception as e:
            # re-raised in the calling thread, after all workers are done
            logger.error("start %d: %s", index, e)
            exceptions[index] = e
        finally:
            worker_semaphore.release()

    with time_to_logger(performance_logger, "batch of %d starts" % len(starts)):
        threads = []
        for index, start in enumerate(starts):
            worker_semaphore.acquire()
            thread = threading.Thread(target=non_failing_function, args=(index, start), name="start-%d" % index)
            thread.start()
            threads.append(thread)

        for thread in threads:
            thread.join()

    for e in exceptions:
        if e is not None:
            raise e
    return results
