"""
Main file to run all examples contained in this source distribution
"""
import os, sys
import subprocess

all_examples = [
    'simulated',
]

if __name__ == "__main__":

    for example_folder in all_examples:
        try:
            os.chdir(example_folder)
        except OSError:
            continue

        print(f"Running examples in: {example_folder}")

        try:
            subprocess.call([sys.executable, "./runall.py"])
        except OSError:
            print("... no runall.py script found in this folder")

        os.chdir('..')
