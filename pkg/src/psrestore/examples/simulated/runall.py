"""
Control file to run all simulated-data examples contained in this source distribution
"""
import importlib

from __init__ import __all__ as examples

for exmpl in examples:
    print(f"   >> {exmpl}")
    module = importlib.import_module(f"psrestore.examples.simulated.{exmpl}")
    for name in dir(module):
        obj = getattr(module, name)
        if isinstance(obj, type) and name.startswith('Example') and obj.__module__ == module.__name__:
            ex = obj()
            print(ex)
            ex.run()
