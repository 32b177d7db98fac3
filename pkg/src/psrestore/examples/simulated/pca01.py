"""
Example
"""
from ...examples.Example import Example

from ...pipeline.SyntheticScene import make_scene
from ...pipeline.Simulation import SimulationSpec, simulate_dataset
from ...pipeline.Baseline import baseline_pansharpen
from ...pca.PcaBasis import fit_pca, forward_pca
from ...plotter.ImagePlotter import ImagePlotter


class ExamplePca01(Example):

    def docString(self):
        s = """
        Principal components of a pansharpened image.

        The first component carries the spatial structure; the chromatic
        components of a fused image show the aliasing and blockiness of the
        MS input that the restoration filters out.
        """
        return s

    def problem(self):
        spec = SimulationSpec()
        highres = make_scene(self.size, bands=4, seed=self.seed)
        reference, pan, ms = simulate_dataset(highres, spec)
        fused = baseline_pansharpen(ms, pan, spec.ms_factor)

        basis = fit_pca(fused)
        components = forward_pca(fused, basis)

        for k, share in enumerate(basis.explainedVariance()):
            name = "f_S " if k == 0 else f"f_C{k}"
            print(f"{name}: {100.0 * share:6.2f} % of the variance")

        target = self.outputPath("components.png")
        if target:
            ImagePlotter().componentPlot(components, filename=target, variances=basis.variances)

        return basis


if __name__ == "__main__":
    ex = ExamplePca01()
    print(ex)
    ex.run()
