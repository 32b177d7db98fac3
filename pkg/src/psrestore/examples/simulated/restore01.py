"""
Example
"""
from ...examples.Example import Example

from ...pipeline.Experiment import Experiment
from ...pipeline.SyntheticScene import make_scene
from ...pipeline.Simulation import SimulationSpec
from ...pipeline.RestoreParams import RestoreParams
from ...plotter.ImagePlotter import ImagePlotter


class ExampleRestore01(Example):

    def docString(self):
        s = """
        Reduced-resolution experiment on a synthetic 4-band scene.

        The scene is degraded to a reference (factor 3, MTF 0.15), a PAN
        (weighted band average, same degradation) and an aliased MS image
        (factor 12, MTF 0.35). The MS image is fused with the PAN by PCA
        substitution and the fused image is restored. Quality indices of
        the interpolated MS (EXP), the fused (Fus) and the restored (Rest)
        image are printed side by side.
        """
        return s

    def problem(self):
        highres = make_scene(self.size, bands=4, seed=self.seed)

        experiment = Experiment(SimulationSpec(), RestoreParams())
        table = experiment.run(highres)

        print(table.to_string(float_format=lambda v: f"{v:.4f}"))

        plotter = ImagePlotter()
        for name, img in (('fused', experiment.fused), ('restored', experiment.restored),
                          ('reference', experiment.reference)):
            target = self.outputPath(f"{name}.png")
            if target:
                plotter.setImage(img)
                plotter.quicklook(rgb=(2, 1, 0), filename=target, title=name)

        return table


if __name__ == "__main__":
    ex = ExampleRestore01()
    print(ex)
    ex.run()
