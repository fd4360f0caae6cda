import setuptools

install_deps = ["importlib-metadata",
        "natsort",
        "numpy>=1.24.3",
        "numba>=0.57.0",
        "scipy>=1.9.0",
        "tqdm",
        ]

test_deps = [
      "pytest",
      "pytest-cov",
]

all_deps = test_deps

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="golayft",
    author="The golayft developers",
    description="Fault-tolerant Golay ancilla preparation: circuits, overhead simulation and threshold bounds",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(include=["golayft", "golayft.*"]),
    setup_requires=[
      "pytest-runner",
      "setuptools_scm",
    ],
    use_scm_version=True,
    install_requires=install_deps,
    tests_require=test_deps,
    extras_require={
      "tests": test_deps,
      "all": all_deps,
    },
    include_package_data=True,
    package_data={"golayft": ["data/*.txt"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
      entry_points = {
        "console_scripts": [
          "golayft = golayft.__main__:main",
        ]
        },
)
