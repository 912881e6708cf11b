from pasa.cli import main

main()
