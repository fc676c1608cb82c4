from setuptools import find_packages, setup

setup(
    name="forca",
    version="0.1.0",
    description="Álgebras forçantes, classes de Čech e verificação exata de exemplos",
    packages=find_packages(include=["src", "src.*"]),
    py_modules=["main"],
    python_requires=">=3.9",
    install_requires=[
        "sympy>=1.13",
        "SQLAlchemy>=2.0",
        "alembic>=1.13",
        "python-dotenv>=1.0",
    ],
    extras_require={"test": ["pytest>=8.0"]},
    entry_points={"console_scripts": ["forca=main:main"]},
)
