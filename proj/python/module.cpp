#include <pybind11/pybind11.h>
PYBIND11_MODULE(_supercf, m) { m.doc() = "placeholder"; }
