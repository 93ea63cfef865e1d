#pragma once

#include <string>
#include <vector>

namespace liebv {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<std::string> witness;  // empty on success
};

struct Table {
  std::string name;
  std::string truncation;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<Table> tables;

  bool ok() const;
  const CheckResult* find(const std::string& name) const;
  void add(std::string name, bool passed, std::string detail = {},
           std::vector<std::string> witness = {});
  void merge(const Report& other, const std::string& prefix = {});
};

}  // namespace liebv
