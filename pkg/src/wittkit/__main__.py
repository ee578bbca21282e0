from wittkit.cli import main

main()
