import numpy as np


class Solver():
    """
    Abstract class for any iterative solver implementation.

    This class describes the functions needed by any solver
    """

    def __init__(self):
        """
        Initialize a solver instance without an attached operator.
        """
        self.graph    = None    # establishes link to the weight graph
        self.recorder = None    # optional iteration history

        # numeric iteration tolerance
        self.TOL = 1.0e-5

        # state of the last run
        self.iterations = 0
        self.converged  = False

        # shall the iterations be recorded?
        self.record = False

    def connect(self, graph):
        """
        Attach the weight graph defining the operator.
        """
        self.graph = graph

    def setRecorder(self, recorder):
        """
        Attach a :py:class:`Recorder`; recording starts immediately.
        """
        self.recorder = recorder
        self.record = recorder is not None
        if recorder is not None:
            recorder.enable()

    def fetchState(self):
        """
        Fetch the current :code:`state` of the solver.

        .. list-table:: **state** is defined as a dictionary with the following contents:

            * - **graph**
              - pointer to the linked weight graph (required)
            * - **iterations**
              - number of iterations performed by the last run
            * - **converged**
              - convergence flag of the last run

        :return: state of the solver
        """
        state = {}
        state['graph']      = self.graph
        state['iterations'] = self.iterations
        state['converged']  = self.converged
        return state

    def solve(self, *args, **kwargs):
        msg = "{}.solve() needs to be overloaded".format(self.__class__.__name__)
        raise NotImplementedError(msg)

    @staticmethod
    def relativeChange(u_new, u_old):
        """
        :math:`\\|u^{n+1}-u^n\\|_2 / \\|u^n\\|_2` (absolute change if :math:`u^n = 0`)
        """
        denom = np.linalg.norm(u_old)
        change = np.linalg.norm(u_new - u_old)
        return change / denom if denom > 0.0 else change
