#include "easl/atom.hpp"

#include <mutex>
#include <set>

namespace easl {

Atom Atom::intern(std::string_view text) {
    // std::set keeps node addresses stable across inserts.
    static std::set<std::string, std::less<>> registry;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = registry.find(text);
    if (it == registry.end()) it = registry.emplace(text).first;
    return Atom(&*it);
}

} // namespace easl
