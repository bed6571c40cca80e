#include "divalg/counting.hpp"
#include "divalg/errors.hpp"
#include "divalg/lattice.hpp"
#include "divalg/tabulated.hpp"
#include "divalg/toric.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace divalg;

namespace {

using PyVec = std::vector<long long>;

PyVec to_py(const IntVector& v)
{
    PyVec out;
    for (const auto& x : v)
        out.push_back(static_cast<long long>(x));
    return out;
}

std::vector<PyVec> to_py(const std::vector<IntVector>& vs)
{
    std::vector<PyVec> out;
    for (const auto& v : vs)
        out.push_back(to_py(v));
    return out;
}

CartierDivisor divisor(const ToricVariety& x, const PyVec& c)
{
    return CartierDivisor(x, make_int_vector(c));
}

py::dict certificate_dict(const FGCertificate& c)
{
    py::dict d;
    d["kind"] = certificate_kind_name(c.kind);
    d["generator_degrees"] = c.generators.degrees();
    d["stabilization_degree"] = c.stabilization_degree;
    d["stabilized"] = c.stabilized;
    d["probe_bound"] = c.probe_bound ? py::object(py::int_(*c.probe_bound)) : py::object(py::none());
    d["note"] = c.note;
    return d;
}

std::vector<std::int64_t> dims(const DimensionTable& t)
{
    return t.dims;
}

} // namespace

PYBIND11_MODULE(_divalg, m)
{
    m.doc() = "Exact divisorial algebras and modules on toric varieties and tabulated Hilbert data";

    static py::exception<Error> exc(m, "DivalgError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    py::class_<ToricVariety>(m, "ToricVariety")
        .def(py::init([](const std::vector<PyVec>& rays, const std::vector<std::vector<std::size_t>>& cones) {
                 Fan f;
                 for (const auto& r : rays)
                     f.rays.push_back(make_int_vector(r));
                 f.dim = f.rays.empty() ? 0 : f.rays.front().size();
                 f.max_cones = cones;
                 return ToricVariety(f);
             }),
             py::arg("rays"), py::arg("cones"))
        .def_property_readonly("dim", &ToricVariety::dim)
        .def_property_readonly("num_rays", &ToricVariety::num_rays)
        .def_property_readonly("smooth", &ToricVariety::smooth);

    m.def("projective_space", &varieties::projective_space, py::arg("n"));
    m.def("p1xp1", &varieties::p1xp1);
    m.def("blowup_p2", &varieties::blowup_p2);
    m.def("hirzebruch", &varieties::hirzebruch, py::arg("a"));

    m.def("h0", [](const ToricVariety& x, const PyVec& d) { return h0(x, divisor(x, d)); }, py::arg("x"),
          py::arg("d"));
    m.def("sections", [](const ToricVariety& x, const PyVec& d) { return to_py(sections(x, divisor(x, d))); },
          py::arg("x"), py::arg("d"));
    m.def(
        "hilbert_function",
        [](const ToricVariety& x, const PyVec& l, int max_degree, const std::optional<PyVec>& d, int offset) {
            CartierDivisor dd = d ? divisor(x, *d) : CartierDivisor::zero(x);
            return dims(h0_table(x, dd, divisor(x, l), offset, max_degree));
        },
        py::arg("x"), py::arg("l"), py::arg("max_degree"), py::arg("d") = py::none(), py::arg("offset") = 0);
    m.def("exact_fg_algebra", [](const ToricVariety& x, const PyVec& l) {
        return certificate_dict(exact_fg_algebra(x, divisor(x, l)));
    }, py::arg("x"), py::arg("l"));
    m.def("exact_fg_module", [](const ToricVariety& x, const PyVec& d, const PyVec& l, int p) {
        return certificate_dict(exact_fg_module(x, divisor(x, d), divisor(x, l), p));
    }, py::arg("x"), py::arg("d"), py::arg("l"), py::arg("p") = 0);
    m.def("search_algebra_generators", [](const ToricVariety& x, const PyVec& l, int bound) {
        return certificate_dict(find_algebra_generators(divisorial_algebra(x, divisor(x, l)), bound).certificate);
    }, py::arg("x"), py::arg("l"), py::arg("bound"));
    m.def("fix_mov", [](const ToricVariety& x, const PyVec& d) {
        FixMov fm = fix_mov(x, divisor(x, d));
        return std::make_pair(to_py(fm.fix.coeffs()), to_py(fm.mov.coeffs()));
    }, py::arg("x"), py::arg("d"));
    m.def("is_ample", [](const ToricVariety& x, const PyVec& d) { return is_ample(x, divisor(x, d)); });
    m.def("is_base_point_free",
          [](const ToricVariety& x, const PyVec& d) { return is_base_point_free(x, divisor(x, d)); });

    m.def(
        "lattice_points",
        [](const std::vector<std::pair<PyVec, long long>>& halfspaces) {
            if (halfspaces.empty())
                throw Error(ErrorCode::InvalidArgument, "no constraints");
            std::vector<HalfSpace> hs;
            for (const auto& [a, b] : halfspaces)
                hs.push_back(HalfSpace::make(make_int_vector(a), Rational(b)));
            return to_py(lattice_points(RationalPolyhedron(halfspaces.front().first.size(), hs)));
        },
        py::arg("halfspaces"), "Integer points of {x : a.x >= -b} for the given (a, b) pairs.");
    m.def(
        "hilbert_basis",
        [](const std::vector<PyVec>& gens) {
            std::vector<IntVector> g;
            for (const auto& v : gens)
                g.push_back(make_int_vector(v));
            return to_py(hilbert_basis(Cone(g.empty() ? 0 : g.front().size(), g)).elements);
        },
        py::arg("generators"));

    m.def("growth_degree", [](const std::vector<std::int64_t>& h) {
        DimensionTable t;
        t.dims = h;
        return growth_degree(t, 0, t.last_degree());
    }, py::arg("dims"));
    m.def("example26_dims", [](int n, int degrees) {
        auto d = example26_dataset(n, degrees);
        return std::make_pair(dims(d.algebra.dims), dims(d.module.dims));
    }, py::arg("n"), py::arg("degrees"));
    m.def("nonfg_witness", [](int n, int degrees) {
        auto d = example26_dataset(n, degrees);
        return certificate_dict(nonfg_witness(d.algebra, d.module, degrees - 1));
    }, py::arg("n"), py::arg("degrees"), "Counting witness on the synthetic dataset of the given dimension.");
}
