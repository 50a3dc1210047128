#pragma once

#include <iosfwd>

namespace cleanpair {

// 0 success, 1 verification or computation failure, 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cleanpair
