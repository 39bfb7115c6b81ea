#pragma once

// Built-in presentations, and loading of presentation sources.

#include <string>
#include <string_view>
#include <vector>

#include "diop/presentation.hpp"

namespace diop {

std::vector<std::string> corpus_names();

// Source text of a corpus entry (dioperad or presentation format). Entries
// produced by the coloring functor are serialized from their construction.
std::string corpus_text(std::string_view name);

// Expanded presentation; throws InputError for an unknown name.
Presentation corpus(std::string_view name);

// Parses either format; dioperad text is expanded into its colored shuffle
// presentation.
Presentation load_presentation(std::string_view text);

// "corpus:NAME" or a file path.
std::string read_source(std::string_view spec);
Presentation load_source(std::string_view spec);

}  // namespace diop
