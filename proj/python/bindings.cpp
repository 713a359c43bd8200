// Python bindings: robot parameters, the rank-revealing factorization,
// kinematics and balance primitives, and the scenario-driven simulation loop.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "quadloc/error.hpp"
#include "quadloc/la/decompose.hpp"
#include "quadloc/la/matrix.hpp"
#include "quadloc/model/dynamics.hpp"
#include "quadloc/model/kinematics.hpp"
#include "quadloc/model/robot_params.hpp"
#include "quadloc/model/support.hpp"
#include "quadloc/sim/loop.hpp"
#include "quadloc/sim/report.hpp"
#include "quadloc/sim/scenario.hpp"

namespace py = pybind11;
using namespace quadloc;

namespace {

using Arr3 = std::array<double, 3>;
using Feet = std::array<Arr3, 4>;
using Sigma = std::array<int, 4>;

la::Vec3 vec3_of(const Arr3& a) { return la::vec3(a[0], a[1], a[2]); }

std::array<la::Vec3, 4> feet_of(const Feet& f) {
  std::array<la::Vec3, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = vec3_of(f[i]);
  return out;
}

la::Mat3 mat3_of(const std::array<Arr3, 3>& rows) {
  la::Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = rows[i][j];
  return r;
}

template <int R, int C>
py::array_t<double> matrix_array(const la::Mat<R, C>& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  auto b = out.template mutable_unchecked<2>();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
  return out;
}

template <int R>
py::array_t<double> vector_array(const la::Mat<R, 1>& v) {
  py::array_t<double> out(v.rows());
  auto b = out.template mutable_unchecked<1>();
  for (int i = 0; i < v.rows(); ++i) b(i) = v[i];
  return out;
}

py::array_t<double> point_array(const la::Vec3& v) { return vector_array<3>(v); }

// Thin LDQ of a 6 x 12 matrix: (L, d, Q, perm, iterations).
py::tuple ldq(py::array_t<double, py::array::c_style | py::array::forcecast> x, int rank) {
  if (x.ndim() != 2 || x.shape(0) != 6 || x.shape(1) != 12)
    throw py::value_error("expected a 6 x 12 array");
  la::Mat<6, 12> m(6, 12);
  auto b = x.unchecked<2>();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 12; ++j) m(i, j) = b(i, j);

  const auto f = la::ldq_decompose<6, 12>(m, rank);
  py::array_t<long> perm(6);
  auto pb = perm.mutable_unchecked<1>();
  for (int i = 0; i < 6; ++i) pb(i) = f.perm[i];
  return py::make_tuple(matrix_array(f.L), vector_array<6>(f.d), matrix_array(f.Q), perm,
                        f.iterations);
}

py::array_t<double> foot_position(const model::RobotParams& rp, int leg, const Arr3& q) {
  const auto kin = model::leg_forward_kinematics(rp, leg, vec3_of(q));
  return point_array(kin.ge);
}

py::array_t<double> polygon_vertices(const Sigma& sigma, const Feet& feet) {
  const auto poly = model::support_polygon(sigma, feet_of(feet));
  py::array_t<double> out({static_cast<py::ssize_t>(poly.v.size()), static_cast<py::ssize_t>(3)});
  auto b = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < poly.v.size(); ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = poly.v[i][j];
  return out;
}

bool polygon_contains(const Sigma& sigma, const Feet& feet, const Arr3& p, double tol) {
  return model::support_polygon(sigma, feet_of(feet)).contains(vec3_of(p), tol);
}

py::array_t<double> polygon_closest(const Sigma& sigma, const Feet& feet, const Arr3& p) {
  return point_array(model::support_polygon(sigma, feet_of(feet)).closest_point(vec3_of(p)));
}

py::array_t<double> zmp(const Arr3& og, const std::array<Arr3, 3>& R, const Arr3& force,
                        const Arr3& moment, const Arr3& force_g0, double tol) {
  model::BodyWrench w{vec3_of(force), vec3_of(moment)};
  return point_array(model::zero_moment_point(vec3_of(og), mat3_of(R), w, vec3_of(force_g0), tol));
}

py::array_t<double> zmp_inverse(const Arr3& oz, double z_ref, const std::array<Arr3, 3>& R,
                                const Arr3& force, const Arr3& moment, const Arr3& force_g0,
                                double tol) {
  model::BodyWrench w{vec3_of(force), vec3_of(moment)};
  return point_array(
      model::zero_moment_point_inverse(vec3_of(oz), z_ref, mat3_of(R), w, vec3_of(force_g0), tol));
}

py::dict row_dict(const sim::TickData& r) {
  py::dict d;
  d["t"] = r.t;
  d["q0"] = vector_array<6>(r.q0);
  d["q0_ref"] = vector_array<6>(r.q0_ref);
  d["sigma"] = r.sigma;
  d["N"] = r.N;
  d["r"] = r.r;
  d["T"] = r.T;
  d["beta"] = r.beta;
  d["clock"] = r.clock;
  d["iterations"] = r.iterations;
  return d;
}

py::dict trace_columns(const std::vector<sim::TickData>& rows) {
  const py::ssize_t n = static_cast<py::ssize_t>(rows.size());
  py::array_t<double> t(n), T(n), beta(n), clock(n);
  py::array_t<double> q0({n, static_cast<py::ssize_t>(6)});
  py::array_t<double> q0_ref({n, static_cast<py::ssize_t>(6)});
  py::array_t<long> N(n), r(n), iterations(n);
  py::array_t<long> sigma({n, static_cast<py::ssize_t>(4)});
  py::array_t<double> of_w({n, static_cast<py::ssize_t>(4), static_cast<py::ssize_t>(3)});

  auto tb = t.mutable_unchecked<1>(), Tb = T.mutable_unchecked<1>(),
       bb = beta.mutable_unchecked<1>(), cb = clock.mutable_unchecked<1>();
  auto qb = q0.mutable_unchecked<2>(), rb = q0_ref.mutable_unchecked<2>();
  auto Nb = N.mutable_unchecked<1>(), kb = r.mutable_unchecked<1>(),
       ib = iterations.mutable_unchecked<1>();
  auto sb = sigma.mutable_unchecked<2>();
  auto fb = of_w.mutable_unchecked<3>();
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    tb(i) = row.t;
    Tb(i) = row.T;
    bb(i) = row.beta;
    cb(i) = row.clock;
    Nb(i) = row.N;
    kb(i) = row.r;
    ib(i) = row.iterations;
    for (int j = 0; j < 6; ++j) {
      qb(i, j) = row.q0[j];
      rb(i, j) = row.q0_ref[j];
    }
    for (int f = 0; f < 4; ++f) {
      sb(i, f) = row.sigma[f];
      for (int j = 0; j < 3; ++j) fb(i, f, j) = row.of_w[f][j];
    }
  }

  py::dict d;
  d["t"] = t;
  d["q0"] = q0;
  d["q0_ref"] = q0_ref;
  d["sigma"] = sigma;
  d["N"] = N;
  d["r"] = r;
  d["T"] = T;
  d["beta"] = beta;
  d["clock"] = clock;
  d["of_w"] = of_w;
  d["iterations"] = iterations;
  return d;
}

sim::LoopOptions options(double rate_hz, double duration) {
  sim::LoopOptions opt;
  opt.rate_hz = rate_hz;
  opt.duration = duration;
  return opt;
}

// Owning wrapper pairing the loop with the scenario it runs.
class Simulation {
 public:
  Simulation(const std::string& robot, const std::string& scenario, double rate_hz,
             double duration)
      : loop_(model::load_robot_params(robot), sim::load_scenario(scenario),
              options(rate_hz, duration)) {}

  py::dict step() { return row_dict(loop_.step()); }
  py::dict run() { return trace_columns(loop_.run()); }
  long total_ticks() const { return loop_.total_ticks(); }
  long tick_index() const { return loop_.tick_index(); }

 private:
  sim::SimulationLoop loop_;
};

py::dict run_scenario(const std::string& robot, const std::string& scenario, double rate_hz,
                      double duration) {
  const auto rp = model::load_robot_params(robot);
  const auto sc = sim::load_scenario(scenario);
  sim::SimulationLoop loop(rp, sc, options(rate_hz, duration));
  const auto rows = loop.run();
  const double T_s = rate_hz > 0 ? 1.0 / rate_hz : rp.T_s;
  const auto s = sim::summarize(rows, sc, T_s);

  py::array_t<double> max_abs(6), mean_abs(6);
  auto ma = max_abs.mutable_unchecked<1>();
  auto me = mean_abs.mutable_unchecked<1>();
  for (int i = 0; i < 6; ++i) {
    ma(i) = s.overall.pose[i].max_abs;
    me(i) = s.overall.pose[i].mean_abs;
  }
  int min_n = 4;
  for (const auto& row : rows) min_n = std::min(min_n, row.N);

  py::dict iters;
  for (const auto& [n, bucket] : s.per_n) iters[py::int_(n)] = bucket.iteration_values;

  py::dict d;
  d["ticks"] = s.ticks;
  d["duration"] = s.duration;
  d["max_abs"] = max_abs;
  d["mean_abs"] = mean_abs;
  d["min_contacts"] = min_n;
  d["iterations_by_contacts"] = iters;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quadruped locomotion control stack";

  // Base first: translators run in reverse registration order, so the derived
  // exceptions must be matched before the catch-all base.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RuntimeFault>(m, "RuntimeFault", PyExc_RuntimeError);

  py::class_<model::RobotParams>(m, "RobotParams")
      .def_readonly("m", &model::RobotParams::m)
      .def_readonly("g", &model::RobotParams::g)
      .def_readonly("T_s", &model::RobotParams::T_s)
      .def_readonly("zeta", &model::RobotParams::zeta)
      .def_readonly("k_p_body", &model::RobotParams::k_p_body)
      .def_readonly("k_d_body", &model::RobotParams::k_d_body);

  m.def("load_robot_params", &model::load_robot_params, py::arg("path"),
        "Parse a robot parameter file.");
  m.def("stance_rank", &model::stance_rank, py::arg("grounded_count"),
        "Constraint rank for a generic stance with the given contact count.");
  m.def("ldq", &ldq, py::arg("x"), py::arg("rank"),
        "Thin LDQ factorization of a 6 x 12 matrix: (L, d, Q, perm, iterations).");
  m.def("foot_position", &foot_position, py::arg("params"), py::arg("leg"), py::arg("q"),
        "Foot contact point in the body frame from three joint angles.");
  m.def("support_polygon", &polygon_vertices, py::arg("sigma"), py::arg("feet"),
        "Convex support polygon vertices for the grounded feet.");
  m.def("support_contains", &polygon_contains, py::arg("sigma"), py::arg("feet"), py::arg("point"),
        py::arg("tol") = 1e-12, "Whether a ground point lies inside the support polygon.");
  m.def("support_closest", &polygon_closest, py::arg("sigma"), py::arg("feet"), py::arg("point"),
        "Closest point of the support polygon to a ground point.");
  m.def("zero_moment_point", &zmp, py::arg("og"), py::arg("R"), py::arg("force"),
        py::arg("moment"), py::arg("force_g0"), py::arg("tol") = 1e-9,
        "Ground point where the wrench's tipping moment vanishes.");
  m.def("zero_moment_point_inverse", &zmp_inverse, py::arg("oz"), py::arg("z_ref"), py::arg("R"),
        py::arg("force"), py::arg("moment"), py::arg("force_g0"), py::arg("tol") = 1e-9,
        "Body position whose zero moment point equals the given ground point.");
  m.def("run_scenario", &run_scenario, py::arg("robot"), py::arg("scenario"),
        py::arg("rate_hz") = 0.0, py::arg("duration") = 0.0,
        "Run a scenario to completion and summarize the tracking errors.");

  py::class_<Simulation>(m, "Simulation")
      .def(py::init<const std::string&, const std::string&, double, double>(), py::arg("robot"),
           py::arg("scenario"), py::arg("rate_hz") = 0.0, py::arg("duration") = 0.0)
      .def("step", &Simulation::step, "Advance one control tick and return its trace row.")
      .def("run", &Simulation::run, "Run to completion and return the trace as column arrays.")
      .def_property_readonly("total_ticks", &Simulation::total_ticks)
      .def_property_readonly("tick_index", &Simulation::tick_index);
}
