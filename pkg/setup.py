import setuptools

with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

__version__ = "0.1.0"

setuptools.setup(
    name="ncdet",
    version=__version__,
    description="Quasideterminants and Dieudonne, Moore and Study determinants over quaternions, with exact arithmetic",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "src"},
    packages=setuptools.find_packages(where="src"),
    python_requires=">=3.9",
    install_requires=[
        "numpy",
        "pandas",
        "python-box",
        "pyYAML",
        "tqdm",
        "ensure",
        "joblib",
    ],
    extras_require={"test": ["pytest", "hypothesis", "types-PyYAML"]},
    entry_points={"console_scripts": ["ncdet=ncdet.cli:main"]},
)
