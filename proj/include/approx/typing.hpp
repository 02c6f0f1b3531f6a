#pragma once

#include "approx/syntax.hpp"

#include <optional>
#include <string>
#include <vector>

namespace approx {

class TypeMismatch : public Error {
 public:
  TypeMismatch(const std::string& expected, const std::string& found, const std::string& where)
      : Error("type mismatch in " + where + ": expected " + expected + ", found " + found),
        expected(expected),
        found(found) {}
  std::string expected;
  std::string found;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name) : Error("unbound variable '" + name + "'"), name(name) {}
  std::string name;
};

class UnboundTypeVariable : public Error {
 public:
  explicit UnboundTypeVariable(const std::string& name)
      : Error("unbound type variable '" + name + "'"), name(name) {}
  std::string name;
};

class KindError : public Error {
 public:
  using Error::Error;
};

/// Term and type variables in scope; later bindings shadow earlier ones.
class TyCtx {
 public:
  TyCtx& bind(std::string name, Ty t);
  TyCtx& bind_type(std::string name);
  TyCtx with(std::string name, Ty t) const;
  TyCtx with_type(std::string name) const;

  std::optional<Ty> lookup(const std::string& name) const;
  bool has_type(const std::string& name) const;

  const std::vector<std::pair<std::string, Ty>>& terms() const { return terms_; }
  const std::vector<std::string>& types() const { return types_; }

 private:
  std::vector<std::pair<std::string, Ty>> terms_;
  std::vector<std::string> types_;
};

void kind_check(const TyCtx& ctx, const Ty& t);
Ty infer_type(const TyCtx& ctx, const Expr& e);

}  // namespace approx
