#include "qkit/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace qkit {

namespace {

constexpr double kPi = std::numbers::pi;

int expected_arity(const GateOp& op) {
  switch (op.kind) {
    case GateKind::H: case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::S: case GateKind::T: case GateKind::RPhi: case GateKind::RS:
      return 1;
    case GateKind::CNOT: case GateKind::CZ: case GateKind::CRPhi: case GateKind::SWAP:
      return 2;
    case GateKind::TOFFOLI:
      return 3;
    case GateKind::Custom:
      return op.matrix ? log2_exact(op.matrix->rows()) : -1;
    case GateKind::ControlledCustom:
      return op.matrix ? log2_exact(op.matrix->rows()) + 1 : -1;
    case GateKind::Blackbox:
      return op.box ? op.box->arity() : -1;
  }
  return -1;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::RPhi: return "RPHI";
    case GateKind::RS: return "RS";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CRPhi: return "CRPHI";
    case GateKind::SWAP: return "SWAP";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::Custom: return "CUSTOM";
    case GateKind::ControlledCustom: return "CCUSTOM";
    case GateKind::Blackbox: return "BLACKBOX";
  }
  return "?";
}

GateOp make(GateKind k, std::vector<int> targets) {
  GateOp op;
  op.kind = k;
  op.targets = std::move(targets);
  return op;
}

}  // namespace

bool operator==(const GateOp& a, const GateOp& b) {
  if (a.kind != b.kind || a.targets != b.targets || a.angle != b.angle || a.s != b.s ||
      a.adjoint != b.adjoint || a.controls != b.controls || a.control_values != b.control_values ||
      a.box != b.box) {
    return false;
  }
  if (static_cast<bool>(a.matrix) != static_cast<bool>(b.matrix)) return false;
  return !a.matrix || a.matrix->data() == b.matrix->data();
}

namespace gates {
GateOp H(int q) { return make(GateKind::H, {q}); }
GateOp X(int q) { return make(GateKind::X, {q}); }
GateOp Y(int q) { return make(GateKind::Y, {q}); }
GateOp Z(int q) { return make(GateKind::Z, {q}); }
GateOp S(int q) { return make(GateKind::S, {q}); }
GateOp T(int q) { return make(GateKind::T, {q}); }
GateOp RPhi(int q, double phi) {
  GateOp op = make(GateKind::RPhi, {q});
  op.angle = phi;
  return op;
}
GateOp RS(int q, int s) {
  if (s < 0) throw ParameterError("R_s needs s >= 0");
  GateOp op = make(GateKind::RS, {q});
  op.s = s;
  return op;
}
GateOp CNOT(int control, int target) { return make(GateKind::CNOT, {control, target}); }
GateOp CZ(int a, int b) { return make(GateKind::CZ, {a, b}); }
GateOp CRPhi(int control, int target, double phi) {
  GateOp op = make(GateKind::CRPhi, {control, target});
  op.angle = phi;
  return op;
}
GateOp SWAP(int a, int b) { return make(GateKind::SWAP, {a, b}); }
GateOp TOFFOLI(int c1, int c2, int target) { return make(GateKind::TOFFOLI, {c1, c2, target}); }
GateOp Custom(ComplexMatrix u, std::vector<int> targets) {
  if (!u.is_unitary(1e-9)) throw ParameterError("custom gate is not unitary within 1e-9");
  GateOp op = make(GateKind::Custom, std::move(targets));
  op.matrix = std::make_shared<const ComplexMatrix>(std::move(u));
  return op;
}
GateOp ControlledCustom(ComplexMatrix u, int control, std::vector<int> targets) {
  if (!u.is_unitary(1e-9)) throw ParameterError("custom gate is not unitary within 1e-9");
  targets.insert(targets.begin(), control);
  GateOp op = make(GateKind::ControlledCustom, std::move(targets));
  op.matrix = std::make_shared<const ComplexMatrix>(std::move(u));
  return op;
}
GateOp Box(std::shared_ptr<const Blackbox> box, std::vector<int> targets) {
  GateOp op = make(GateKind::Blackbox, std::move(targets));
  op.box = std::move(box);
  return op;
}
}  // namespace gates

GateOp with_controls(GateOp op, const std::vector<int>& controls, const std::vector<int>& values) {
  if (!values.empty() && values.size() != controls.size()) throw ParameterError("control value count mismatch");
  if (op.control_values.empty() && !values.empty()) op.control_values.assign(op.controls.size(), 1);
  for (std::size_t i = 0; i < controls.size(); ++i) {
    op.controls.push_back(controls[i]);
    if (!values.empty() || !op.control_values.empty()) op.control_values.push_back(values.empty() ? 1 : values[i]);
  }
  return op;
}

ComplexMatrix rphi_matrix(double phi) { return ComplexMatrix{{1, 0}, {0, std::polar(1.0, phi)}}; }

ComplexMatrix rs_matrix(int s) { return rphi_matrix(2.0 * kPi / std::ldexp(1.0, s)); }

ComplexMatrix controlled(const ComplexMatrix& u) {
  if (!u.is_unitary(1e-9)) throw ParameterError("controlled() needs a unitary");
  const std::size_t d = u.rows();
  ComplexMatrix m = ComplexMatrix::identity(2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(d + i, d + j) = u(i, j);
  return m;
}

ComplexMatrix local_matrix(const GateOp& op) {
  static const double r = 1.0 / std::sqrt(2.0);
  switch (op.kind) {
    case GateKind::H: return ComplexMatrix{{r, r}, {r, -r}};
    case GateKind::X: return pauli('X');
    case GateKind::Y: return pauli('Y');
    case GateKind::Z: return pauli('Z');
    case GateKind::S: return ComplexMatrix{{1, 0}, {0, cplx(0, 1)}};
    case GateKind::T: return rphi_matrix(kPi / 4);
    case GateKind::RPhi: return rphi_matrix(op.angle);
    case GateKind::RS: return rs_matrix(op.s);
    case GateKind::CNOT: return controlled(pauli('X'));
    case GateKind::CZ: return controlled(pauli('Z'));
    case GateKind::CRPhi: return controlled(rphi_matrix(op.angle));
    case GateKind::SWAP: return ComplexMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    case GateKind::TOFFOLI: return controlled(controlled(pauli('X')));
    case GateKind::Custom: return *op.matrix;
    case GateKind::ControlledCustom: return controlled(*op.matrix);
    case GateKind::Blackbox: {
      const std::size_t d = std::size_t{1} << op.box->arity();
      ComplexMatrix m(d, d);
      for (std::size_t c = 0; c < d; ++c)
        for (const auto& [row, v] : op.box->column(c, op.adjoint)) m(row, c) = v;
      return m;
    }
  }
  throw ParameterError("unknown gate kind");
}

GateOp adjoint(const GateOp& op) {
  GateOp a = op;
  switch (op.kind) {
    case GateKind::S:
      a.kind = GateKind::RPhi;
      a.angle = -kPi / 2;
      break;
    case GateKind::T:
      a.kind = GateKind::RPhi;
      a.angle = -kPi / 4;
      break;
    case GateKind::RPhi:
    case GateKind::CRPhi:
      a.angle = -op.angle;
      break;
    case GateKind::RS:
      a.kind = GateKind::RPhi;
      a.angle = -2.0 * kPi / std::ldexp(1.0, op.s);
      a.s = 0;
      break;
    case GateKind::Custom:
    case GateKind::ControlledCustom:
      a.matrix = std::make_shared<const ComplexMatrix>(op.matrix->adjoint());
      break;
    case GateKind::Blackbox:
      a.adjoint = !op.adjoint;
      break;
    default:
      break;  // self-inverse
  }
  return a;
}

Circuit::Circuit(int qubits) : n_(qubits) { check_qubit_count(qubits); }

Circuit& Circuit::add(GateOp op) {
  const int arity = expected_arity(op);
  if (arity < 0 || static_cast<int>(op.targets.size()) != arity) {
    throw ParameterError(std::string("gate ") + kind_name(op.kind) + " has the wrong number of targets");
  }
  std::set<int> seen;
  for (int q : op.targets) {
    if (q < 0 || q >= n_) throw ParameterError("gate target " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) throw ParameterError("gate targets must be distinct");
  }
  for (int q : op.controls) {
    if (q < 0 || q >= n_) throw ParameterError("gate control " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) throw ParameterError("gate control overlaps a target");
  }
  if (!op.control_values.empty() && op.control_values.size() != op.controls.size()) {
    throw ParameterError("control value count mismatch");
  }
  ops_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(const Circuit& other, const std::vector<int>& qubit_map) {
  if (qubit_map.empty()) {
    if (other.n_ > n_) throw ParameterError("appended circuit is wider than the target circuit");
    for (const auto& op : other.ops_) add(op);
    return *this;
  }
  if (static_cast<int>(qubit_map.size()) != other.n_) throw ParameterError("qubit map size mismatch");
  for (GateOp op : other.ops_) {
    for (int& q : op.targets) q = qubit_map[q];
    for (int& q : op.controls) q = qubit_map[q];
    add(std::move(op));
  }
  return *this;
}

ComplexMatrix Circuit::unitary() const {
  const std::size_t d = std::size_t{1} << n_;
  ComplexMatrix u(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    const StateVector out = simulate(*this, c);
    for (std::size_t r = 0; r < d; ++r) u(r, c) = out[r];
  }
  return u;
}

bool operator==(const Circuit& a, const Circuit& b) {
  return a.qubit_count() == b.qubit_count() && a.ops() == b.ops();
}

void apply_op(StateVector& s, const GateOp& op) {
  std::vector<int> controls = op.controls;
  std::vector<int> values = op.control_values;
  if (values.empty()) values.assign(controls.size(), 1);
  auto push_control = [&](int q) {
    controls.push_back(q);
    values.push_back(1);
  };
  switch (op.kind) {
    case GateKind::CNOT:
      push_control(op.targets[0]);
      apply_matrix(s, pauli('X'), {op.targets[1]}, controls, values);
      return;
    case GateKind::CZ:
      push_control(op.targets[0]);
      apply_matrix(s, pauli('Z'), {op.targets[1]}, controls, values);
      return;
    case GateKind::CRPhi:
      push_control(op.targets[0]);
      apply_matrix(s, rphi_matrix(op.angle), {op.targets[1]}, controls, values);
      return;
    case GateKind::TOFFOLI:
      push_control(op.targets[0]);
      push_control(op.targets[1]);
      apply_matrix(s, pauli('X'), {op.targets[2]}, controls, values);
      return;
    case GateKind::SWAP:
      apply_permutation(s, [](std::uint64_t v) { return ((v & 1U) << 1) | (v >> 1); }, op.targets, controls, values);
      return;
    case GateKind::ControlledCustom: {
      push_control(op.targets[0]);
      std::vector<int> t(op.targets.begin() + 1, op.targets.end());
      apply_matrix(s, *op.matrix, t, controls, values);
      return;
    }
    case GateKind::Custom:
      apply_matrix(s, *op.matrix, op.targets, controls, values);
      return;
    case GateKind::Blackbox:
      op.box->apply(s, op.targets, controls, values, op.adjoint);
      return;
    default:
      apply_matrix(s, local_matrix(op), op.targets, controls, values);
  }
}

void simulate_inplace(const Circuit& c, StateVector& s) {
  if (s.qubit_count() != c.qubit_count()) throw DimensionError("state width does not match the circuit");
  for (const auto& op : c.ops()) apply_op(s, op);
}

StateVector simulate(const Circuit& c, const StateVector& input) {
  StateVector s = input;
  simulate_inplace(c, s);
  return s;
}

StateVector simulate(const Circuit& c, std::uint64_t basis_input) {
  StateVector s(c.qubit_count(), basis_input);
  simulate_inplace(c, s);
  return s;
}

Circuit inverse(const Circuit& c) {
  Circuit inv(c.qubit_count());
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) inv.add(adjoint(*it));
  return inv;
}

Circuit controlled_circuit(const Circuit& c, const std::vector<int>& controls,
                           const std::vector<int>& values, int total_qubits,
                           const std::vector<int>& qubit_map) {
  Circuit out(total_qubits);
  Circuit mapped(total_qubits);
  if (qubit_map.empty()) mapped.append(c);
  else mapped.append(c, qubit_map);
  for (const auto& op : mapped.ops()) out.add(with_controls(op, controls, values));
  return out;
}

cplx path_sum_amplitude(const Circuit& c, std::uint64_t input, std::uint64_t output) {
  const int n = c.qubit_count();
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (input >= dim || output >= dim) throw DimensionError("basis index out of range");

  struct Step {
    ComplexMatrix matrix;  // empty for black boxes
    const GateOp* op;
    std::vector<int> targets;
    std::uint64_t cmask = 0, cval = 0;
  };
  std::vector<Step> steps;
  for (const auto& op : c.ops()) {
    Step st;
    st.op = &op;
    st.targets = op.targets;
    if (op.kind != GateKind::Blackbox) st.matrix = local_matrix(op);
    for (std::size_t i = 0; i < op.controls.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - op.controls[i]);
      st.cmask |= bit;
      if (op.control_values.empty() || op.control_values[i]) st.cval |= bit;
    }
    steps.push_back(std::move(st));
  }

  std::function<cplx(std::size_t, std::uint64_t)> dfs = [&](std::size_t g, std::uint64_t idx) -> cplx {
    if (g == steps.size()) return idx == output ? cplx(1.0) : cplx(0.0);
    const Step& st = steps[g];
    if ((idx & st.cmask) != st.cval) return dfs(g + 1, idx);
    const std::uint64_t in = extract_bits(idx, st.targets, n);
    std::uint64_t cleared = idx;
    for (int q : st.targets) cleared &= ~(std::uint64_t{1} << (n - 1 - q));
    const int k = static_cast<int>(st.targets.size());
    auto next_index = [&](std::uint64_t local) {
      std::uint64_t j = cleared;
      for (int m = 0; m < k; ++m)
        if ((local >> (k - 1 - m)) & 1U) j |= std::uint64_t{1} << (n - 1 - st.targets[m]);
      return j;
    };
    cplx total = 0;
    if (st.op->kind == GateKind::Blackbox) {
      for (const auto& [row, v] : st.op->box->column(in, st.op->adjoint)) total += v * dfs(g + 1, next_index(row));
    } else {
      for (std::size_t row = 0; row < st.matrix.rows(); ++row) {
        const cplx v = st.matrix(row, in);
        if (v == cplx(0.0)) continue;
        total += v * dfs(g + 1, next_index(row));
      }
    }
    return total;
  };
  return dfs(0, input);
}

Circuit random_circuit(int n, int gate_count, RandomSource& rng) {
  Circuit c(n);
  const int kinds = n >= 3 ? 13 : n == 2 ? 12 : 8;
  auto pick = [&](int count) {
    std::vector<int> q;
    while (static_cast<int>(q.size()) < count) {
      const int v = static_cast<int>(rng.below(n));
      if (std::find(q.begin(), q.end(), v) == q.end()) q.push_back(v);
    }
    return q;
  };
  for (int g = 0; g < gate_count; ++g) {
    switch (rng.below(kinds)) {
      case 0: c.add(gates::H(pick(1)[0])); break;
      case 1: c.add(gates::X(pick(1)[0])); break;
      case 2: c.add(gates::Y(pick(1)[0])); break;
      case 3: c.add(gates::Z(pick(1)[0])); break;
      case 4: c.add(gates::S(pick(1)[0])); break;
      case 5: c.add(gates::T(pick(1)[0])); break;
      case 6: c.add(gates::RPhi(pick(1)[0], 2.0 * kPi * rng.uniform())); break;
      case 7: c.add(gates::RS(pick(1)[0], 1 + static_cast<int>(rng.below(4)))); break;
      case 8: { auto q = pick(2); c.add(gates::CNOT(q[0], q[1])); break; }
      case 9: { auto q = pick(2); c.add(gates::CZ(q[0], q[1])); break; }
      case 10: { auto q = pick(2); c.add(gates::CRPhi(q[0], q[1], 2.0 * kPi * rng.uniform())); break; }
      case 11: { auto q = pick(2); c.add(gates::SWAP(q[0], q[1])); break; }
      default: { auto q = pick(3); c.add(gates::TOFFOLI(q[0], q[1], q[2])); break; }
    }
  }
  return c;
}

Circuit parse_circuit(std::string_view text) {
  struct Line {
    std::string name;
    std::vector<std::string> args;
    int number;
  };
  std::vector<Line> lines;
  int declared = -1;
  int max_index = -1;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line l{{}, {}, number};
    if (!(ls >> l.name)) continue;
    std::string tok;
    while (ls >> tok) l.args.push_back(tok);
    if (l.name == "QUBITS") {
      if (l.args.size() != 1) throw ParameterError("line " + std::to_string(number) + ": QUBITS takes one argument");
      declared = std::stoi(l.args[0]);
      continue;
    }
    lines.push_back(std::move(l));
  }

  auto parse_int = [](const std::string& s, int line) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size()) throw ParameterError("line " + std::to_string(line) + ": bad integer '" + s + "'");
    return v;
  };
  auto parse_real = [](const std::string& s, int line) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size()) throw ParameterError("line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
  };

  std::vector<GateOp> ops;
  for (const auto& l : lines) {
    auto want = [&](std::size_t count) {
      if (l.args.size() != count) {
        throw ParameterError("line " + std::to_string(l.number) + ": " + l.name + " expects " +
                             std::to_string(count) + " arguments");
      }
    };
    auto q = [&](std::size_t i) {
      const int v = parse_int(l.args[i], l.number);
      if (v < 0) throw ParameterError("line " + std::to_string(l.number) + ": negative qubit index");
      max_index = std::max(max_index, v);
      return v;
    };
    GateOp op;
    const std::string& k = l.name;
    if (k == "H") { want(1); op = gates::H(q(0)); }
    else if (k == "X") { want(1); op = gates::X(q(0)); }
    else if (k == "Y") { want(1); op = gates::Y(q(0)); }
    else if (k == "Z") { want(1); op = gates::Z(q(0)); }
    else if (k == "S") { want(1); op = gates::S(q(0)); }
    else if (k == "T") { want(1); op = gates::T(q(0)); }
    else if (k == "RPHI") { want(2); op = gates::RPhi(q(0), parse_real(l.args[1], l.number)); }
    else if (k == "RS") { want(2); op = gates::RS(q(0), parse_int(l.args[1], l.number)); }
    else if (k == "CNOT") { want(2); op = gates::CNOT(q(0), q(1)); }
    else if (k == "CZ") { want(2); op = gates::CZ(q(0), q(1)); }
    else if (k == "CRPHI") { want(3); op = gates::CRPhi(q(0), q(1), parse_real(l.args[2], l.number)); }
    else if (k == "SWAP") { want(2); op = gates::SWAP(q(0), q(1)); }
    else if (k == "TOFFOLI") { want(3); op = gates::TOFFOLI(q(0), q(1), q(2)); }
    else throw ParameterError("line " + std::to_string(l.number) + ": unknown gate '" + k + "'");
    ops.push_back(std::move(op));
  }
  const int n = declared >= 0 ? declared : max_index + 1;
  if (max_index >= n) throw ParameterError("gate index exceeds the declared qubit count");
  Circuit c(n);
  for (auto& op : ops) c.add(std::move(op));
  return c;
}

std::string emit_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.qubit_count() << "\n";
  char buf[64];
  for (const auto& op : c.ops()) {
    if (op.kind == GateKind::Custom || op.kind == GateKind::ControlledCustom || op.kind == GateKind::Blackbox ||
        !op.controls.empty()) {
      throw ParameterError("only catalog gates without extra controls have a text form");
    }
    out << kind_name(op.kind);
    for (int q : op.targets) out << ' ' << q;
    if (op.kind == GateKind::RPhi || op.kind == GateKind::CRPhi) {
      std::snprintf(buf, sizeof buf, "%.17g", op.angle);
      out << ' ' << buf;
    } else if (op.kind == GateKind::RS) {
      out << ' ' << op.s;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qkit
