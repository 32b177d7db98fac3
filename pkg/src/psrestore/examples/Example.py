"""
Defines an Example class from which all provided examples will be derived.
"""
import os


class Example():
    """
    :param size: side length of the synthetic scene on the original grid
    :param seed: scene seed
    :param output_dir: directory receiving figures and rasters; nothing is written when **None**
    """

    def __init__(self, size=384, seed=0, output_dir=None):
        self.size = size
        self.seed = seed
        self.output_dir = output_dir

    def __str__(self):
        s  = "Example {}\n".format(self.__class__.__name__)
        doc_string = self.docString()
        if doc_string:
            s += doc_string + '\n'
        return s

    def run(self):
        """
        Run the example problem and return its result.
        """
        return self.problem()

    def outputPath(self, name):
        """
        :param name: file name inside :code:`output_dir`
        :return: full path with the directory created, or **None** if no output is requested
        """
        if not self.output_dir:
            return None
        os.makedirs(self.output_dir, exist_ok=True)
        return os.path.join(self.output_dir, name)

    def docString(self):
        """
        Return problem specific documentation as a multi-line string.
        """
        return ""

    def problem(self, *args, **kwargs):
        """
        Build and run the example problem
        """
        msg = "{}.problem() needs to be overloaded".format(self.__class__.__name__)
        raise NotImplementedError(msg)
