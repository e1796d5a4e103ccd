#pragma once

#include <string>

#include "psolv/presentation.hpp"

inline std::string data_path(std::string const& rel) {
  return std::string(PSOLV_DATA_DIR) + "/" + rel;
}

inline psolv::Presentation fixture(std::string const& name) {
  return psolv::parse_presentation(psolv::read_file(data_path("presentations/" + name + ".pres")));
}
