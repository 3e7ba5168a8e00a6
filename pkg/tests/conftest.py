import io

import numpy as np


def read_csv(path):
    """Load one of the lab's CSV artifacts: skip '#' metadata lines, return
    a dict column_name -> float array (nan for empty cells)."""
    lines = [ln for ln in open(path, encoding="utf-8")
             if ln.strip() and not ln.startswith("#")]
    names = lines[0].strip().split(",")
    cleaned = "\n".join(
        ",".join(cell if cell != "" else "nan" for cell in ln.strip().split(","))
        for ln in lines[1:]
    )
    data = np.loadtxt(io.StringIO(cleaned), delimiter=",", ndmin=2)
    return {name: data[:, i] for i, name in enumerate(names)}
