#include "flow/process_registry.hpp"

#include "flow/error.hpp"

namespace flow {

namespace {

std::vector<Value> one(Value v) {
  std::vector<Value> out;
  out.push_back(std::move(v));
  return out;
}

const Value& single_input(std::span<const Value> in, const char* name) {
  if (in.size() != 1)
    throw Error(ErrorKind::TypeMismatch,
                std::string(name) + " takes one input, got " + std::to_string(in.size()));
  return in.front();
}

ProcessFn fold_numbers(double init, double (*op)(double, double)) {
  return [init, op](std::span<const Value> in, std::size_t) {
    double acc = init;
    for (const auto& v : in) acc = op(acc, v.as_number());
    return one(Value::number(acc));
  };
}

}  // namespace

ProcessRegistry ProcessRegistry::with_builtins() {
  ProcessRegistry reg;
  reg.add("identity", [](std::span<const Value> in, std::size_t) {
    return std::vector<Value>(in.begin(), in.end());
  });
  reg.add("add1", [](std::span<const Value> in, std::size_t) {
    return one(Value::number(single_input(in, "add1").as_number() + 1));
  });
  reg.add("not", [](std::span<const Value> in, std::size_t) {
    return one(Value::boolean(!single_input(in, "not").as_boolean()));
  });
  reg.add("add", fold_numbers(0, [](double a, double b) { return a + b; }));
  reg.add("mul", fold_numbers(1, [](double a, double b) { return a * b; }));

  reg.add_factory("const", [](const Value& v) -> ProcessFn {
    return [v](std::span<const Value>, std::size_t) { return one(v); };
  });
  reg.add_factory("add", [](const Value& k) -> ProcessFn {
    double step = k.as_number();
    return [step](std::span<const Value> in, std::size_t) {
      return one(Value::number(single_input(in, "add(k)").as_number() + step));
    };
  });
  reg.add_factory("mul", [](const Value& k) -> ProcessFn {
    double factor = k.as_number();
    return [factor](std::span<const Value> in, std::size_t) {
      return one(Value::number(single_input(in, "mul(k)").as_number() * factor));
    };
  });
  return reg;
}

void ProcessRegistry::add(std::string name, ProcessFn fn) {
  fns_.insert_or_assign(std::move(name), std::move(fn));
}

void ProcessRegistry::add_factory(std::string name, ProcessFactory factory) {
  factories_.insert_or_assign(std::move(name), std::move(factory));
}

ProcessFn ProcessRegistry::resolve(std::string_view name) const {
  if (auto it = fns_.find(name); it != fns_.end()) return it->second;

  auto open = name.find('(');
  if (open != std::string_view::npos && open > 0 && name.back() == ')') {
    auto base = name.substr(0, open);
    auto arg = name.substr(open + 1, name.size() - open - 2);
    if (auto it = factories_.find(base); it != factories_.end()) {
      auto literal = parse_literal(arg);
      if (!literal)
        throw Error(ErrorKind::UnknownProcess,
                    "bad argument '" + std::string(arg) + "' for process " + std::string(base));
      try {
        return it->second(*literal);
      } catch (const Error& e) {
        throw Error(ErrorKind::UnknownProcess,
                    "process '" + std::string(name) + "': " + e.what());
      }
    }
  }
  throw Error(ErrorKind::UnknownProcess, "no process named '" + std::string(name) + "'");
}

bool ProcessRegistry::contains(std::string_view name) const {
  try {
    resolve(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace flow
