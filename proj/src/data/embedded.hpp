#pragma once

#include <string_view>

namespace hyp3term::detail {

/// Contents of a file under data/, compiled into the library.
std::string_view embedded_file(std::string_view name);

}  // namespace hyp3term::detail
