// Generated by pogo from typesecho.json.
// Only text inside protected regions survives regeneration.
#include "TypesEcho.hpp"

#include "tng/server/runtime.hpp"

int main(int argc, char** argv)
{
    return tng::server::server_main(argc, argv, {TypesEcho::make_class()});
}
